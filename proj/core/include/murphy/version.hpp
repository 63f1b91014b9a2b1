#ifndef MURPHY_VERSION_HPP
#define MURPHY_VERSION_HPP

namespace murphy {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
