#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/statevector.hpp"

namespace rsp {

/// Which corrective path Bob can use when Alice obtains the Psi outcome.
struct CaseTag {
    enum class Kind { General, CaseA, CaseB };

    Kind kind = Kind::General;
    double theta = 0.0; ///< arg(beta) in radians; meaningful for CaseB only

    static CaseTag general() { return {Kind::General, 0.0}; }
    static CaseTag case_a() { return {Kind::CaseA, 0.0}; }
    static CaseTag case_b(double theta) { return {Kind::CaseB, theta}; }

    bool operator==(const CaseTag &) const = default;
};

std::string_view to_string(CaseTag::Kind kind) noexcept;

/**
 * Canonical description of the m-qubit target alpha|0...0> + beta|1...1>.
 *
 * alpha is real and non-negative, the pair is normalized, and case_tag agrees
 * with the stored coefficients. Only canonicalize_target builds one.
 */
class TargetSpec {
  public:
    double alpha() const noexcept { return alpha_; }
    Complex beta() const noexcept { return beta_; }
    std::size_t m() const noexcept { return m_; }
    const CaseTag &case_tag() const noexcept { return case_tag_; }

  private:
    TargetSpec(double alpha, Complex beta, std::size_t m, CaseTag tag)
        : alpha_(alpha), beta_(beta), m_(m), case_tag_(tag) {}

    friend TargetSpec canonicalize_target(Complex, Complex, std::size_t,
                                          double);

    double alpha_;
    Complex beta_;
    std::size_t m_;
    CaseTag case_tag_;
};

/**
 * Removes the global phase so alpha is real and >= 0, then classifies.
 *
 * `tolerance` bounds both the normalization check and the case tests. Within
 * it the pair is snapped onto the classified family: the norm is made exact,
 * CaseA drops Im(beta), CaseB pins |alpha| = |beta| = 1/sqrt(2). The result is
 * the input state up to a global phase and an O(tolerance) perturbation.
 */
TargetSpec canonicalize_target(Complex alpha_raw, Complex beta_raw,
                               std::size_t m, double tolerance = kInputTol);

/// CaseA wins when both tests pass.
CaseTag classify_case(double alpha, Complex beta,
                      double tolerance = kInputTol);

/// Classical frame from Alice to Bob. Valid payloads are exactly "0", "10"
/// and "11"; Abort carries no bits.
struct ClassicalMessage {
    enum class Kind { Payload, Abort };

    Kind kind = Kind::Abort;
    std::vector<int> bits;

    static ClassicalMessage payload(std::vector<int> bits) {
        return {Kind::Payload, std::move(bits)};
    }
    static ClassicalMessage abort() { return {Kind::Abort, {}}; }

    /// Parses the wire form; throws MalformedMessage on anything else.
    static ClassicalMessage from_wire(std::string_view wire);

    std::size_t bit_count() const noexcept {
        return kind == Kind::Abort ? 0 : bits.size();
    }
    bool is_valid() const;
    /// "0", "10", "11" or "ABORT". No padding, no separators.
    std::string wire() const;

    bool operator==(const ClassicalMessage &) const = default;
};

struct TrialRecord {
    Outcome outcome;
    ClassicalMessage message;
    std::optional<StateVector> bob_state;
    double fidelity;
    bool success;
    std::size_t bits_sent;
};

/// Fidelity at or above this counts as a successful preparation.
inline constexpr double kSuccessFidelity = 1.0 - 1e-9;

ClassicalMessage alice_encode(Outcome outcome, const CaseTag &case_tag);

/// Bob's local action on his collapsed qubit. Returns nullopt on Abort.
std::optional<StateVector> bob_act(const ClassicalMessage &message,
                                   const StateVector &collapsed,
                                   std::size_t m);

StateVector build_target_state(const TargetSpec &target);

TrialRecord run_trial(const TargetSpec &target, const OutcomeSelector &select);

/// Same as above with the target state precomputed (hot loop in Monte Carlo).
TrialRecord run_trial(const TargetSpec &target, const StateVector &target_state,
                      const OutcomeSelector &select);

std::string_view to_string(Outcome outcome) noexcept;

} // namespace rsp
