#include "rsp/protocol.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "rsp/error.hpp"

namespace rsp {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

std::vector<std::size_t> ancilla_indices(std::size_t m) {
    std::vector<std::size_t> targets(m - 1);
    std::iota(targets.begin(), targets.end(), std::size_t{1});
    return targets;
}

// Step (2): attach m-1 fresh |0> qubits and copy qubit 0 onto each of them.
StateVector fan_out(const StateVector &qubit, std::size_t m) {
    const auto targets = ancilla_indices(m);
    return cnot_fanout(append_ancillas(qubit, m - 1), 0, targets);
}

} // namespace

std::string_view to_string(CaseTag::Kind kind) noexcept {
    switch (kind) {
    case CaseTag::Kind::General:
        return "General";
    case CaseTag::Kind::CaseA:
        return "CaseA";
    case CaseTag::Kind::CaseB:
        return "CaseB";
    }
    return "Unknown";
}

std::string_view to_string(Outcome outcome) noexcept {
    return outcome == Outcome::Psi ? "psi" : "psiperp";
}

CaseTag classify_case(double alpha, Complex beta, double tolerance) {
    if (std::abs(beta.imag()) <= tolerance)
        return CaseTag::case_a();
    if (std::abs(alpha - kInvSqrt2) <= tolerance &&
        std::abs(std::abs(beta) - kInvSqrt2) <= tolerance)
        return CaseTag::case_b(std::arg(beta));
    return CaseTag::general();
}

TargetSpec canonicalize_target(Complex alpha_raw, Complex beta_raw,
                               std::size_t m, double tolerance) {
    if (m < 2)
        throw RspError(ErrorKind::BadQubitCount,
                       "m = " + std::to_string(m) + ", need m >= 2");
    const double n2 = std::norm(alpha_raw) + std::norm(beta_raw);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tolerance)
        throw RspError(ErrorKind::NonNormalizedTarget,
                       "|alpha|^2 + |beta|^2 = " + std::to_string(n2));

    const double scale = 1.0 / std::sqrt(n2);
    const double mag = std::abs(alpha_raw);
    const Complex unphase =
        mag > 0.0 ? std::conj(alpha_raw) / mag : Complex{1.0, 0.0};
    double alpha = mag * scale;
    Complex beta = beta_raw * unphase * scale;

    const CaseTag tag = classify_case(alpha, beta, tolerance);
    switch (tag.kind) {
    case CaseTag::Kind::CaseA: {
        const double norm = std::hypot(alpha, beta.real());
        alpha /= norm;
        beta = Complex{beta.real() / norm, 0.0};
        break;
    }
    case CaseTag::Kind::CaseB:
        alpha = kInvSqrt2;
        beta = std::polar(kInvSqrt2, tag.theta);
        break;
    case CaseTag::Kind::General:
        break;
    }
    return TargetSpec(alpha, beta, m, tag);
}

ClassicalMessage ClassicalMessage::from_wire(std::string_view wire) {
    if (wire == "ABORT")
        return abort();
    if (wire == "0")
        return payload({0});
    if (wire == "10")
        return payload({1, 0});
    if (wire == "11")
        return payload({1, 1});
    throw RspError(ErrorKind::MalformedMessage,
                   "unknown frame '" + std::string(wire) + "'");
}

bool ClassicalMessage::is_valid() const {
    if (kind == Kind::Abort)
        return bits.empty();
    return bits == std::vector<int>{0} || bits == std::vector<int>{1, 0} ||
           bits == std::vector<int>{1, 1};
}

std::string ClassicalMessage::wire() const {
    if (kind == Kind::Abort)
        return "ABORT";
    std::string out;
    for (int b : bits)
        out.push_back(b ? '1' : '0');
    return out;
}

ClassicalMessage alice_encode(Outcome outcome, const CaseTag &case_tag) {
    if (outcome == Outcome::PsiPerp)
        return ClassicalMessage::payload({0});
    switch (case_tag.kind) {
    case CaseTag::Kind::CaseA:
        return ClassicalMessage::payload({1, 0});
    case CaseTag::Kind::CaseB:
        return ClassicalMessage::payload({1, 1});
    case CaseTag::Kind::General:
        break;
    }
    return ClassicalMessage::abort();
}

std::optional<StateVector> bob_act(const ClassicalMessage &message,
                                   const StateVector &collapsed,
                                   std::size_t m) {
    if (!message.is_valid())
        throw RspError(ErrorKind::MalformedMessage,
                       "payload '" + message.wire() + "' is not in the codec");
    if (m < 2)
        throw RspError(ErrorKind::BadQubitCount,
                       "m = " + std::to_string(m) + ", need m >= 2");
    if (collapsed.n_qubits() != 1)
        throw RspError(ErrorKind::DimensionMismatch,
                       "Bob holds exactly one qubit before fan-out");

    if (message.kind == ClassicalMessage::Kind::Abort)
        return std::nullopt;

    if (message.bits.size() == 1) // "0": Psi_perp branch
        return fan_out(apply_1q(collapsed, 0, u1_gate()), m);
    if (message.bits[1] == 0) // "10": already alpha|0> + beta|1>
        return fan_out(collapsed, m);
    return fan_out(apply_1q(collapsed, 0, u2_gate()), m); // "11"
}

StateVector build_target_state(const TargetSpec &target) {
    std::vector<Complex> amps(std::size_t{1} << target.m());
    amps.front() = target.alpha();
    amps.back() = target.beta();
    return StateVector(target.m(), std::move(amps));
}

TrialRecord run_trial(const TargetSpec &target, const OutcomeSelector &select) {
    return run_trial(target, build_target_state(target), select);
}

TrialRecord run_trial(const TargetSpec &target, const StateVector &target_state,
                      const OutcomeSelector &select) {
    const MeasurementBasis basis =
        basis_from_target(target.alpha(), target.beta());
    MeasurementResult measured = measure_in_basis(make_bell(), 0, basis, select);

    ClassicalMessage message = alice_encode(measured.outcome, target.case_tag());
    std::optional<StateVector> bob =
        bob_act(message, measured.collapsed, target.m());

    const double fidelity = bob ? fidelity_mod_phase(*bob, target_state) : 0.0;
    const std::size_t bits = message.bit_count();
    return {measured.outcome, std::move(message), std::move(bob), fidelity,
            fidelity >= kSuccessFidelity, bits};
}

} // namespace rsp
