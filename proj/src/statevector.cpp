#include "rsp/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rsp/error.hpp"

namespace rsp {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NonNormalizedTarget:
        return "NonNormalizedTarget";
    case ErrorKind::NegativeAlpha:
        return "NegativeAlpha";
    case ErrorKind::BadQubitCount:
        return "BadQubitCount";
    case ErrorKind::ZeroProbabilityBranch:
        return "ZeroProbabilityBranch";
    case ErrorKind::NonUnitary:
        return "NonUnitary";
    case ErrorKind::NonNormalizedState:
        return "NonNormalizedState";
    case ErrorKind::SameQubit:
        return "SameQubit";
    case ErrorKind::DuplicateTarget:
        return "DuplicateTarget";
    case ErrorKind::DimensionMismatch:
        return "DimensionMismatch";
    case ErrorKind::QubitOutOfRange:
        return "QubitOutOfRange";
    case ErrorKind::MalformedMessage:
        return "MalformedMessage";
    case ErrorKind::InvalidArgument:
        return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

constexpr std::size_t kMaxQubits = 24;

double squared_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto &a : v)
        s += std::norm(a);
    return s;
}

void check_qubit(const StateVector &state, std::size_t qubit) {
    if (qubit >= state.n_qubits())
        throw RspError(ErrorKind::QubitOutOfRange,
                       "qubit " + std::to_string(qubit) + " of " +
                           std::to_string(state.n_qubits()));
}

// Bit position of `qubit` inside an amplitude index (big-endian register).
std::size_t bit_of(std::size_t n_qubits, std::size_t qubit) {
    return n_qubits - 1 - qubit;
}

template <std::size_t N>
void check_unitary(const std::array<Complex, N * N> &m) {
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < N; ++k)
                acc += std::conj(m[k * N + i]) * m[k * N + j];
            const Complex expected{i == j ? 1.0 : 0.0, 0.0};
            if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()) ||
                std::abs(acc - expected) > kUnitaryTol)
                throw RspError(ErrorKind::NonUnitary,
                               "U^dagger U deviates from identity");
        }
    }
}

} // namespace

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits_ == 0 || n_qubits_ > kMaxQubits)
        throw RspError(ErrorKind::BadQubitCount,
                       "register size " + std::to_string(n_qubits_));
    if (amplitudes_.size() != (std::size_t{1} << n_qubits_))
        throw RspError(ErrorKind::DimensionMismatch,
                       "expected 2^" + std::to_string(n_qubits_) +
                           " amplitudes, got " +
                           std::to_string(amplitudes_.size()));
    for (const auto &a : amplitudes_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw RspError(ErrorKind::NonNormalizedState,
                           "non-finite amplitude");
    const double n2 = squared_norm(amplitudes_);
    if (std::abs(n2 - 1.0) > kIdentityTol)
        throw RspError(ErrorKind::NonNormalizedState,
                       "squared norm " + std::to_string(n2));
}

StateVector StateVector::normalized(std::size_t n_qubits,
                                    std::vector<Complex> amplitudes) {
    const double n2 = squared_norm(amplitudes);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw RspError(ErrorKind::NonNormalizedState,
                       "cannot normalize a zero or non-finite vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto &a : amplitudes)
        a *= inv;
    return StateVector(n_qubits, std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t index) {
    if (n_qubits == 0 || n_qubits > kMaxQubits)
        throw RspError(ErrorKind::BadQubitCount,
                       "register size " + std::to_string(n_qubits));
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    if (index >= amps.size())
        throw RspError(ErrorKind::DimensionMismatch, "basis index out of range");
    amps[index] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm_squared() const noexcept {
    return squared_norm(amplitudes_);
}

StateVector StateVector::with_global_phase(Complex phase) const {
    std::vector<Complex> amps(amplitudes_);
    for (auto &a : amps)
        a *= phase;
    return StateVector(n_qubits_, std::move(amps));
}

Unitary2::Unitary2(const std::array<Complex, 4> &elements) : m_(elements) {
    check_unitary<2>(m_);
}

Unitary4::Unitary4(const std::array<Complex, 16> &elements) : m_(elements) {
    check_unitary<4>(m_);
}

MeasurementBasis MeasurementBasis::computational() {
    return {{Complex{1.0}, Complex{0.0}}, {Complex{0.0}, Complex{1.0}}};
}

Unitary2 identity_gate() { return Unitary2({1.0, 0.0, 0.0, 1.0}); }

Unitary2 hadamard_gate() {
    const double h = std::numbers::sqrt2 / 2.0;
    return Unitary2({h, h, h, -h});
}

Unitary2 u1_gate() { return Unitary2({0.0, -1.0, 1.0, 0.0}); }

Unitary2 u2_gate() { return Unitary2({0.0, 1.0, 1.0, 0.0}); }

Unitary4 cnot_matrix() {
    return Unitary4({1, 0, 0, 0, //
                     0, 1, 0, 0, //
                     0, 0, 0, 1, //
                     0, 0, 1, 0});
}

StateVector make_bell() {
    const double h = std::numbers::sqrt2 / 2.0;
    return StateVector(2, {h, 0.0, 0.0, h});
}

MeasurementBasis basis_from_target(double alpha, Complex beta) {
    const double n2 = alpha * alpha + std::norm(beta);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kInputTol)
        throw RspError(ErrorKind::NonNormalizedTarget,
                       "alpha^2 + |beta|^2 = " + std::to_string(n2));
    if (alpha < 0.0)
        throw RspError(ErrorKind::NegativeAlpha,
                       "alpha must be canonicalized to a non-negative real");
    return {{Complex{alpha}, beta}, {std::conj(beta), Complex{-alpha}}};
}

MeasurementResult measure_in_basis(const StateVector &state, std::size_t qubit,
                                   const MeasurementBasis &basis,
                                   const OutcomeSelector &select) {
    check_qubit(state, qubit);
    if (state.n_qubits() < 2)
        throw RspError(ErrorKind::BadQubitCount,
                       "measuring the only qubit leaves an empty register");

    const std::size_t n = state.n_qubits();
    const std::size_t pos = bit_of(n, qubit);
    const std::size_t low_mask = (std::size_t{1} << pos) - 1;
    const std::size_t rest_dim = state.dim() / 2;

    auto project = [&](const std::array<Complex, 2> &v) {
        const Complex c0 = std::conj(v[0]);
        const Complex c1 = std::conj(v[1]);
        std::vector<Complex> out(rest_dim);
        for (std::size_t r = 0; r < rest_dim; ++r) {
            const std::size_t base = ((r & ~low_mask) << 1) | (r & low_mask);
            out[r] = c0 * state[base] + c1 * state[base | (std::size_t{1} << pos)];
        }
        return out;
    };

    auto psi_amps = project(basis.psi);
    const double p_psi = squared_norm(psi_amps);

    Outcome outcome;
    if (select.is_forced()) {
        outcome = select.forced_outcome();
    } else {
        outcome = select.uniform() < p_psi ? Outcome::Psi : Outcome::PsiPerp;
        // A uniform draw can land on a branch of vanishing weight only through
        // rounding in p_psi; fall back to the other branch.
        if (outcome == Outcome::PsiPerp && 1.0 - p_psi < kZeroProbability)
            outcome = Outcome::Psi;
    }

    std::vector<Complex> amps = outcome == Outcome::Psi
                                    ? std::move(psi_amps)
                                    : project(basis.psi_perp);
    const double prob = squared_norm(amps);
    if (prob < kZeroProbability)
        throw RspError(ErrorKind::ZeroProbabilityBranch,
                       "branch probability " + std::to_string(prob));
    return {outcome, prob, StateVector::normalized(n - 1, std::move(amps))};
}

StateVector apply_1q(const StateVector &state, std::size_t qubit,
                     const Unitary2 &u) {
    check_qubit(state, qubit);
    const std::size_t bit = std::size_t{1} << bit_of(state.n_qubits(), qubit);
    std::vector<Complex> out(state.amplitudes().begin(),
                             state.amplitudes().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i & bit)
            continue;
        const Complex a0 = state[i];
        const Complex a1 = state[i | bit];
        out[i] = u(0, 0) * a0 + u(0, 1) * a1;
        out[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return StateVector(state.n_qubits(), std::move(out));
}

StateVector apply_2q(const StateVector &state, std::size_t first,
                     std::size_t second, const Unitary4 &u) {
    check_qubit(state, first);
    check_qubit(state, second);
    if (first == second)
        throw RspError(ErrorKind::SameQubit, "two-qubit gate on one qubit");
    const std::size_t n = state.n_qubits();
    const std::size_t hi = std::size_t{1} << bit_of(n, first);
    const std::size_t lo = std::size_t{1} << bit_of(n, second);
    const std::array<std::size_t, 4> offsets{0, lo, hi, hi | lo};

    std::vector<Complex> out(state.dim());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i & (hi | lo))
            continue;
        std::array<Complex, 4> in;
        for (std::size_t k = 0; k < 4; ++k)
            in[k] = state[i | offsets[k]];
        for (std::size_t r = 0; r < 4; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < 4; ++c)
                acc += u(r, c) * in[c];
            out[i | offsets[r]] = acc;
        }
    }
    return StateVector(n, std::move(out));
}

StateVector apply_cnot(const StateVector &state, std::size_t control,
                       std::size_t target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target)
        throw RspError(ErrorKind::SameQubit,
                       "control and target are both qubit " +
                           std::to_string(control));
    const std::size_t n = state.n_qubits();
    const std::size_t cbit = std::size_t{1} << bit_of(n, control);
    const std::size_t tbit = std::size_t{1} << bit_of(n, target);
    std::vector<Complex> out(state.dim());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[(i & cbit) ? (i ^ tbit) : i] = state[i];
    return StateVector(n, std::move(out));
}

StateVector append_ancillas(const StateVector &state, std::size_t k) {
    if (k == 0)
        return state;
    std::vector<Complex> out(state.dim() << k);
    for (std::size_t i = 0; i < state.dim(); ++i)
        out[i << k] = state[i];
    return StateVector(state.n_qubits() + k, std::move(out));
}

StateVector cnot_fanout(const StateVector &state, std::size_t control,
                        std::span<const std::size_t> targets) {
    check_qubit(state, control);
    std::vector<std::size_t> seen;
    for (auto t : targets) {
        check_qubit(state, t);
        if (t == control)
            throw RspError(ErrorKind::SameQubit,
                           "fan-out target equals control");
        if (std::find(seen.begin(), seen.end(), t) != seen.end())
            throw RspError(ErrorKind::DuplicateTarget,
                           "qubit " + std::to_string(t) + " listed twice");
        seen.push_back(t);
    }
    StateVector out = state;
    for (auto t : targets)
        out = apply_cnot(out, control, t);
    return out;
}

double fidelity_mod_phase(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits())
        throw RspError(ErrorKind::DimensionMismatch,
                       std::to_string(a.n_qubits()) + " vs " +
                           std::to_string(b.n_qubits()) + " qubits");
    Complex overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        overlap += std::conj(a[i]) * b[i];
    return std::norm(overlap);
}

double check_decomposition(double alpha, Complex beta) {
    const MeasurementBasis basis = basis_from_target(alpha, beta);
    const std::array<Complex, 2> after_perp{beta, -alpha};
    const std::array<Complex, 2> after_psi{alpha, std::conj(beta)};
    const double h = std::numbers::sqrt2 / 2.0;

    const StateVector bell = make_bell();
    double worst = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex rebuilt =
                h * (basis.psi_perp[i] * after_perp[j] +
                     basis.psi[i] * after_psi[j]);
            worst = std::max(worst, std::abs(rebuilt - bell[2 * i + j]));
        }
    }
    return worst;
}

} // namespace rsp
