#ifndef MURPHY_ERRORS_HPP
#define MURPHY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace murphy {

// Invalid argument values: out-of-range parameters, non-finite inputs,
// malformed series.
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Estimation failed on otherwise valid inputs: degenerate kernel
// neighborhoods, failed bandwidth selection, singular regression designs.
class estimation_error : public std::runtime_error {
public:
    explicit estimation_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed CSV input; the message names the offending row and column.
class csv_error : public std::runtime_error {
public:
    explicit csv_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace murphy

#endif
