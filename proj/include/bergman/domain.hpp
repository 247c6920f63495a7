#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

// Exact rational exponent, used so that classifications sitting exactly on a
// case boundary are decided by integer arithmetic instead of rounded doubles.
struct Rational {
    long long num = 0;
    long long den = 0;  // den == 0 means "not set"

    bool valid() const { return den > 0; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    // Accepts "p/q" with positive q, or a bare integer "p" (parsed as p/1).
    static std::optional<Rational> parse(const std::string& text);
};

// The domain family: z in C^n with
//   | |z_k|^2 - |z_n|^2 | < s * (|z_n|^2 + 1)^(-a)   for k = 1..n-1,
// where s = radius_scale (1 for the base domain, 2 for the enlarged variant).
struct DomainSpec {
    int n = 2;
    double a = 1.0;
    double radius_scale = 1.0;
    Rational a_ratio{};  // optional exact form of `a`

    DomainSpec() = default;
    DomainSpec(int n_, double a_, double radius_scale_ = 1.0);
    DomainSpec(int n_, const Rational& a_, double radius_scale_ = 1.0);

    void validate() const;  // n >= 2, a > 0, radius_scale in {1, 2}
};

// The slice I(rho) of admissible |z_k|^2 values at |z_n|^2 = rho, clamped
// at zero since the substituted variable is a squared modulus.
struct RadialInterval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// Membership test (strict inequalities; the boundary is excluded).
bool contains(const DomainSpec& spec, const Point& z);

RadialInterval radial_interval(const DomainSpec& spec, double rho);

// Moment f_q(rho) = integral of r^q over I(rho).  Evaluated in product form
// so that the large-rho regime does not cancel catastrophically.
double f_exact(const DomainSpec& spec, int q, double rho);

// Leading term 2 s rho^(q-a) of f_q as rho -> inf.
double f_asymptotic(const DomainSpec& spec, int q, double rho);

// Draws points that are members by construction: |z_n|^2 uniform on
// [0, radial_bound], each |z_k|^2 uniform on the slice, phases uniform.
// Deterministic for a fixed seed.  Not the uniform measure on the domain.
std::vector<Point> sample_points(const DomainSpec& spec, int count, double radial_bound,
                                 std::uint64_t seed);

}  // namespace bergman
