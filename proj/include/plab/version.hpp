#ifndef PLAB_VERSION_HPP
#define PLAB_VERSION_HPP

namespace plab {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace plab

#endif
