// Error taxonomy shared by the library and the CLI.
//
// The CLI maps these onto distinct exit codes, so the split matters:
//   parse_error       -- malformed input (JSON, polynomial strings, flags)
//   domain_error      -- input is well-formed but violates a precondition
//                        (non-monic polynomial, singular matrix, zero eigenvalue, ...)
//   certificate_error -- an exact certificate failed to hold (genericity,
//                        intertwining identity, properties of the spectrum)
//   precision_error   -- a certified numeric computation could not reach the
//                        requested precision or exceeded a size cap
#pragma once

#include <stdexcept>
#include <string>

namespace cps {

class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

class certificate_error : public std::runtime_error {
public:
    explicit certificate_error(const std::string& what) : std::runtime_error(what) {}
};

class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cps
