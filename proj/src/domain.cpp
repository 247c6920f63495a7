#include "bergman/domain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bergman/rng.hpp"

namespace bergman {

std::string Rational::str() const {
    if (!valid()) return "";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::optional<Rational> Rational::parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const long long num = std::stoll(text, &used);
            if (used != text.size()) return std::nullopt;
            return Rational{num, 1};
        }
        const std::string num_s = text.substr(0, slash);
        const std::string den_s = text.substr(slash + 1);
        if (num_s.empty() || den_s.empty()) return std::nullopt;
        const long long num = std::stoll(num_s, &used);
        if (used != num_s.size()) return std::nullopt;
        const long long den = std::stoll(den_s, &used);
        if (used != den_s.size()) return std::nullopt;
        if (den <= 0) return std::nullopt;
        return Rational{num, den};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

DomainSpec::DomainSpec(int n_, double a_, double radius_scale_)
    : n(n_), a(a_), radius_scale(radius_scale_) {
    validate();
}

DomainSpec::DomainSpec(int n_, const Rational& a_, double radius_scale_)
    : n(n_), a(a_.value()), radius_scale(radius_scale_), a_ratio(a_) {
    validate();
}

void DomainSpec::validate() const {
    if (n < 2) throw std::invalid_argument("DomainSpec: n must be >= 2");
    if (!(a > 0.0)) throw std::invalid_argument("DomainSpec: a must be > 0");
    if (radius_scale != 1.0 && radius_scale != 2.0) {
        throw std::invalid_argument("DomainSpec: radius_scale must be 1 or 2");
    }
    if (a_ratio.den != 0 && !a_ratio.valid()) {
        throw std::invalid_argument("DomainSpec: malformed rational exponent");
    }
}

bool contains(const DomainSpec& spec, const Point& z) {
    spec.validate();
    if (static_cast<int>(z.size()) != spec.n) {
        throw std::invalid_argument("contains: point dimension mismatch");
    }
    const double rn2 = std::norm(z[static_cast<std::size_t>(spec.n - 1)]);
    const double bound = spec.radius_scale * std::pow(rn2 + 1.0, -spec.a);
    for (int k = 0; k + 1 < spec.n; ++k) {
        const double rk2 = std::norm(z[static_cast<std::size_t>(k)]);
        if (!(std::fabs(rk2 - rn2) < bound)) return false;
    }
    return true;
}

RadialInterval radial_interval(const DomainSpec& spec, double rho) {
    if (!(rho >= 0.0)) throw std::invalid_argument("radial_interval: rho must be >= 0");
    const double delta = spec.radius_scale * std::pow(rho + 1.0, -spec.a);
    RadialInterval iv;
    iv.lo = std::max(0.0, rho - delta);
    iv.hi = rho + delta;
    return iv;
}

double f_exact(const DomainSpec& spec, int q, double rho) {
    if (q < 0) throw std::invalid_argument("f_exact: q must be >= 0");
    if (!(rho >= 0.0)) throw std::invalid_argument("f_exact: rho must be >= 0");
    const double delta = spec.radius_scale * std::pow(rho + 1.0, -spec.a);
    if (rho <= delta) {
        // Clamped: [0, rho + delta].
        return std::pow(rho + delta, q + 1) / static_cast<double>(q + 1);
    }
    // (hi^(q+1) - lo^(q+1)) / (q+1) in product form: the width 2*delta is
    // exact, and the power sum has no cancellation.
    const double lo = rho - delta;
    const double hi = rho + delta;
    double power_sum = 0.0;
    double hp = 1.0;  // hi^i
    for (int i = 0; i <= q; ++i) {
        double term = hp;
        for (int j = 0; j < q - i; ++j) term *= lo;
        power_sum += term;
        hp *= hi;
    }
    return 2.0 * delta * power_sum / static_cast<double>(q + 1);
}

double f_asymptotic(const DomainSpec& spec, int q, double rho) {
    if (q < 0) throw std::invalid_argument("f_asymptotic: q must be >= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("f_asymptotic: rho must be > 0");
    return 2.0 * spec.radius_scale * std::pow(rho, static_cast<double>(q) - spec.a);
}

std::vector<Point> sample_points(const DomainSpec& spec, int count, double radial_bound,
                                 std::uint64_t seed) {
    spec.validate();
    if (count < 1) throw std::invalid_argument("sample_points: count must be >= 1");
    if (!(radial_bound > 0.0)) throw std::invalid_argument("sample_points: radial_bound must be > 0");

    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    Rng rng(seed);
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(points.size()) < count) {
        const double rho = rng.uniform(0.0, radial_bound);
        Point z(static_cast<std::size_t>(spec.n));
        z[static_cast<std::size_t>(spec.n - 1)] = std::polar(std::sqrt(rho), rng.uniform(0.0, kTwoPi));
        const RadialInterval iv = radial_interval(spec, rho);
        for (int k = 0; k + 1 < spec.n; ++k) {
            const double rk2 = rng.uniform(iv.lo, iv.hi);
            z[static_cast<std::size_t>(k)] = std::polar(std::sqrt(rk2), rng.uniform(0.0, kTwoPi));
        }
        // Draws landing on the boundary after the modulus round-trip are
        // measure-zero; redraw keeps the stream deterministic.
        if (contains(spec, z)) points.push_back(std::move(z));
    }
    return points;
}

}  // namespace bergman
