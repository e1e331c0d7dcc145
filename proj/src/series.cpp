#include "fpois/series.hpp"

#include <sstream>

namespace fpois {

std::string to_string(const FormalFunction& f) {
  std::ostringstream os;
  bool any = false;
  for (int k = 0; k <= f.order(); ++k) {
    if (f[k].is_zero()) continue;
    if (any) os << "; ";
    os << "λ^" << k << ": " << f[k].to_string();
    any = true;
  }
  return any ? os.str() : "0";
}

}  // namespace fpois
