#include "qdspin/qstate.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace qdspin {

namespace {

constexpr double kZeroNormFloor = 1e-15;

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

double norm_squared(std::span<const Complex> amps) {
    double total = 0.0;
    for (const Complex& a : amps) total += std::norm(a);
    return total;
}

SpinState make_spin_state(Complex alpha, Complex beta) {
    if (!finite(alpha) || !finite(beta))
        throw NonFiniteValue("spin amplitudes must be finite");
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (n2 <= kZeroNormFloor)
        throw ZeroNormState("spin state has (near-)zero norm");
    const double inv = 1.0 / std::sqrt(n2);
    return SpinState{alpha * inv, beta * inv};
}

std::array<Complex, 2> photon_basis_ket(PhotonBasis basis) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (basis) {
        case PhotonBasis::deg0:    return {Complex{s, 0.0}, Complex{-s, 0.0}};
        case PhotonBasis::deg90:   return {Complex{s, 0.0}, Complex{s, 0.0}};
        case PhotonBasis::plus45:  return {Complex{s, 0.0}, Complex{0.0, -s}};
        case PhotonBasis::minus45: return {Complex{s, 0.0}, Complex{0.0, s}};
    }
    throw Error("unknown photon basis");
}

PhotonBasis orthogonal_partner(PhotonBasis basis) {
    switch (basis) {
        case PhotonBasis::deg0:    return PhotonBasis::deg90;
        case PhotonBasis::deg90:   return PhotonBasis::deg0;
        case PhotonBasis::plus45:  return PhotonBasis::minus45;
        case PhotonBasis::minus45: return PhotonBasis::plus45;
    }
    throw Error("unknown photon basis");
}

const char* to_string(PhotonBasis basis) {
    switch (basis) {
        case PhotonBasis::deg0:    return "deg0";
        case PhotonBasis::deg90:   return "deg90";
        case PhotonBasis::plus45:  return "plus45";
        case PhotonBasis::minus45: return "minus45";
    }
    throw Error("unknown photon basis");
}

JointState tensor_photon_spins(std::span<const Complex, 2> photon,
                               std::span<const SpinState> spins) {
    if (spins.empty())
        throw WrongArity("tensor_photon_spins needs at least one spin");
    if (std::ssize(spins) > kMaxSpins)
        throw TooManySpins("spin count exceeds the cap of 12");
    if (!finite(photon[0]) || !finite(photon[1]))
        throw NonFiniteValue("photon amplitudes must be finite");
    const double pn2 = std::norm(photon[0]) + std::norm(photon[1]);
    if (pn2 <= kZeroNormFloor)
        throw ZeroNormState("photon ket has (near-)zero norm");
    const double pinv = 1.0 / std::sqrt(pn2);

    const int n = static_cast<int>(spins.size());
    JointState out;
    out.n_spins = n;
    out.amps.resize(std::size_t{1} << (n + 1));
    for (std::size_t idx = 0; idx < out.amps.size(); ++idx) {
        const bool l_photon = (idx >> n) & 1;
        Complex a = (l_photon ? photon[1] : photon[0]) * pinv;
        for (int k = 0; k < n; ++k) {
            const bool down = (idx >> (n - 1 - k)) & 1;
            a *= down ? spins[k].beta : spins[k].alpha;
        }
        out.amps[idx] = a;
    }
    return out;
}

Projection project_photon(const JointState& state, PhotonBasis basis) {
    const int n = state.n_spins;
    const std::size_t spin_dim = std::size_t{1} << n;
    if (state.amps.size() != 2 * spin_dim)
        throw DimensionMismatch("joint state length is not 2^(n_spins+1)");

    const auto ket = photon_basis_ket(basis);
    std::vector<Complex> post(spin_dim);
    double p = 0.0;
    for (std::size_t s = 0; s < spin_dim; ++s) {
        const Complex amp = std::conj(ket[0]) * state.amps[s] +
                            std::conj(ket[1]) * state.amps[spin_dim + s];
        post[s] = amp;
        p += std::norm(amp);
    }

    Projection out;
    out.probability = p;
    if (p > kProbabilityFloor) {
        const double inv = 1.0 / std::sqrt(p);
        for (Complex& a : post) a *= inv;
        out.post_state = SpinRegister{n, std::move(post)};
    }
    return out;
}

double concurrence(const SpinRegister& reg) {
    if (reg.n_spins != 2 || reg.amps.size() != 4)
        throw WrongArity("concurrence needs a two-spin register");
    const Complex det = reg.amps[0] * reg.amps[3] - reg.amps[1] * reg.amps[2];
    return std::clamp(2.0 * std::abs(det), 0.0, 1.0);
}

double entanglement_entropy(const SpinRegister& reg, std::span<const int> partition) {
    const int n = reg.n_spins;
    if (reg.amps.size() != (std::size_t{1} << n))
        throw DimensionMismatch("register length is not 2^n_spins");
    if (partition.empty() || std::ssize(partition) >= n)
        throw BadPartition("partition must be a non-empty proper subset");

    std::vector<bool> in_a(n, false);
    for (int idx : partition) {
        if (idx < 0 || idx >= n)
            throw BadPartition("spin index out of range");
        if (in_a[idx])
            throw BadPartition("duplicate spin index in partition");
        in_a[idx] = true;
    }
    std::vector<int> a_bits, b_bits;
    for (int k = 0; k < n; ++k) (in_a[k] ? a_bits : b_bits).push_back(k);

    // Schmidt coefficients via the SVD of the amplitude vector reshaped into
    // a (subset) x (complement) matrix.
    const auto rows = Eigen::Index{1} << a_bits.size();
    const auto cols = Eigen::Index{1} << b_bits.size();
    Eigen::MatrixXcd m(rows, cols);
    for (std::size_t idx = 0; idx < reg.amps.size(); ++idx) {
        std::size_t row = 0, col = 0;
        for (std::size_t i = 0; i < a_bits.size(); ++i)
            row |= ((idx >> (n - 1 - a_bits[i])) & 1) << (a_bits.size() - 1 - i);
        for (std::size_t i = 0; i < b_bits.size(); ++i)
            col |= ((idx >> (n - 1 - b_bits[i])) & 1) << (b_bits.size() - 1 - i);
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = reg.amps[idx];
    }

    const auto svals = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
    double h = 0.0;
    for (Eigen::Index i = 0; i < svals.size(); ++i) {
        const double p = svals[i] * svals[i];
        if (p > kZeroNormFloor) h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

double fidelity(const SpinRegister& a, const SpinRegister& b) {
    if (a.n_spins != b.n_spins || a.amps.size() != b.amps.size())
        throw DimensionMismatch("registers differ in size");
    Complex overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.amps.size(); ++i)
        overlap += std::conj(a.amps[i]) * b.amps[i];
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

}  // namespace qdspin
