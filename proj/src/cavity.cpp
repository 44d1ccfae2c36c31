#include "qdspin/cavity.hpp"

#include <cmath>
#include <numbers>

namespace qdspin {

namespace {

constexpr double kPi = std::numbers::pi;

// Principal value in (-pi, pi]; std::arg can land on -pi or -0.0 when the
// imaginary part is a negative zero.
double principal_arg(Complex z) {
    const double phase = std::arg(z);
    if (phase == -kPi) return kPi;
    if (phase == 0.0) return 0.0;
    return phase;
}

ReflectionSample make_sample(double omega, Complex r) {
    return ReflectionSample{omega, r, std::abs(r), principal_arg(r)};
}

}  // namespace

CavityParams::CavityParams(double g_, double gamma_, double kappa_,
                           double omega_c_, double omega_x_)
    : g(g_), gamma(gamma_), kappa(kappa_), omega_c(omega_c_), omega_x(omega_x_) {
    if (!(std::isfinite(g) && std::isfinite(gamma) && std::isfinite(kappa) &&
          std::isfinite(omega_c) && std::isfinite(omega_x)))
        throw InvalidParams("cavity parameters must be finite");
    if (!(kappa > 0.0))
        throw InvalidParams("kappa must be positive");
    if (g < 0.0)
        throw InvalidParams("g must be non-negative");
    if (gamma < 0.0)
        throw InvalidParams("gamma must be non-negative");
}

ReflectionSample reflect_hot(const CavityParams& params, double omega) {
    const Complex x{params.gamma / 2.0, params.omega_x - omega};
    const Complex y{params.kappa / 2.0, params.omega_c - omega};
    Complex r;
    if (x == Complex{0.0, 0.0} && params.g == 0.0) {
        // removable 0/0 at gamma = 0, g = 0, omega = omega_x
        r = 1.0 - params.kappa / y;
    } else {
        r = 1.0 - params.kappa * x / (x * y + params.g * params.g);
    }
    return make_sample(omega, r);
}

ReflectionSample reflect_cold(const CavityParams& params, double omega) {
    const Complex num{-params.kappa / 2.0, params.omega_c - omega};
    const Complex den{params.kappa / 2.0, params.omega_c - omega};
    return make_sample(omega, num / den);
}

PhaseShifts phase_shifts(const CavityParams& params, double omega) {
    return PhaseShifts{reflect_hot(params, omega).phase,
                       reflect_cold(params, omega).phase};
}

double faraday_angle(const CavityParams& params, double omega, Spin spin) {
    const PhaseShifts ps = phase_shifts(params, omega);
    double theta = 0.5 * (ps.phi_0 - ps.phi_h);
    // reduce modulo pi into (-pi/2, pi/2]
    while (theta > kPi / 2.0) theta -= kPi;
    while (theta <= -kPi / 2.0) theta += kPi;
    const double signed_theta = spin == Spin::up ? theta : -theta;
    return signed_theta == 0.0 ? 0.0 : signed_theta;
}

std::vector<SpectrumPoint> sweep_spectrum(const CavityParams& params,
                                          double detuning_min,
                                          double detuning_max,
                                          int n_points) {
    if (!(detuning_min < detuning_max))
        throw BadRange("detuning_min must be below detuning_max");
    if (n_points < 2)
        throw BadRange("n_points must be >= 2");

    std::vector<SpectrumPoint> out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        // endpoint-exact grid: (max - min) * i is integral at both ends
        const double d = detuning_min +
                         (detuning_max - detuning_min) * static_cast<double>(i) /
                             static_cast<double>(n_points - 1);
        const double omega = params.omega_c + d * params.kappa;
        SpectrumPoint pt;
        pt.detuning = d;
        pt.cold = reflect_cold(params, omega);
        pt.hot = reflect_hot(params, omega);
        pt.theta_up = faraday_angle(params, omega, Spin::up);
        pt.theta_down = -pt.theta_up;
        out.push_back(pt);
    }
    return out;
}

double solve_detuning(const CavityParams& params, double target_phase_difference) {
    const double target = target_phase_difference;
    if (!std::isfinite(target) || std::abs(target) > kPi)
        throw BadRange("target phase difference must lie in [-pi, pi]");

    if (params.g == 0.0) {
        if (target == 0.0) return params.omega_c;  // every frequency qualifies
        throw NoSolutionInBracket("hot and cold phases coincide for g = 0");
    }

    // The cold phase wraps from +pi to -pi across resonance. Lifting the
    // positive-detuning side by 2*pi gives one continuous branch over the
    // bracket, where plain bisection applies.
    const auto lifted_diff = [&params](double delta) {
        const PhaseShifts ps =
            phase_shifts(params, params.omega_c + delta * params.kappa);
        const double lifted = delta > 0.0 ? ps.phi_0 + 2.0 * kPi : ps.phi_0;
        return lifted - ps.phi_h;
    };
    const double lifted_target = target > 0.0 ? target : target + 2.0 * kPi;

    double lo = -1.0, hi = 1.0;
    double f_lo = lifted_diff(lo) - lifted_target;
    const double f_hi = lifted_diff(hi) - lifted_target;
    if (f_lo == 0.0) {
        hi = lo;
    } else if (f_hi == 0.0) {
        lo = hi;
    } else if ((f_lo < 0.0) == (f_hi < 0.0)) {
        throw NoSolutionInBracket(
            "phase difference does not reach the target within one kappa of resonance");
    }
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = lifted_diff(mid) - lifted_target;
        if (f_mid == 0.0) {
            lo = hi = mid;
        } else if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    const double omega = params.omega_c + 0.5 * (lo + hi) * params.kappa;
    const PhaseShifts ps = phase_shifts(params, omega);
    const double residual =
        std::remainder(ps.phi_0 - ps.phi_h - target, 2.0 * kPi);
    // A sign change straddling the branch discontinuity is not a root.
    if (std::abs(residual) >= 1e-9)
        throw NoSolutionInBracket("bisection closed on a phase discontinuity, not a root");
    return omega;
}

void unwrap_phases(std::span<double> phases) {
    if (phases.size() < 2) return;
    double offset = 0.0;
    double prev = phases[0];
    for (std::size_t i = 1; i < phases.size(); ++i) {
        const double raw = phases[i];
        const double jump = raw - prev;
        if (jump > kPi) offset -= 2.0 * kPi;
        else if (jump < -kPi) offset += 2.0 * kPi;
        phases[i] = raw + offset;
        prev = raw;
    }
}

}  // namespace qdspin
