#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mono {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

// Raised when a Mobius map or resolvent hits its pole exactly.
class PoleError : public Error {
public:
    PoleError(const std::string& what, Complex where) : Error(what), where_(where) {}
    Complex where() const { return where_; }

private:
    Complex where_;
};

class ToleranceError : public Error {
public:
    using Error::Error;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

// A point of the extended complex plane. Infinity is a tag, never a float inf.
struct Extended {
    Complex value{};
    bool infinite = false;

    Extended() = default;
    Extended(Complex v) : value(v) {}
    Extended(double v) : value(v) {}

    static Extended infinity() {
        Extended e;
        e.infinite = true;
        return e;
    }
    bool is_infinite() const { return infinite; }
};

}  // namespace mono
