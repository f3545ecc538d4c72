#include "metastab/limits.hpp"

namespace metastab {

RuntimeLimits& RuntimeLimits::current() {
  thread_local RuntimeLimits limits;
  return limits;
}

}  // namespace metastab
