#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rsp {

using Complex = std::complex<double>;

/// Internal identities (norms, orthogonality, decompositions).
inline constexpr double kIdentityTol = 1e-12;
/// User-supplied coefficients are decimal and lossy.
inline constexpr double kInputTol = 1e-9;
/// Forcing a branch below this Born probability is an error.
inline constexpr double kZeroProbability = 1e-14;
/// Unitarity check applied when a gate matrix is constructed.
inline constexpr double kUnitaryTol = 1e-10;

/**
 * Dense pure state over an ordered qubit register.
 *
 * Amplitude index i is read as a big-endian bitstring: qubit 0 is the most
 * significant bit. Values are immutable; every operation returns a new state.
 * Construction rejects non-finite amplitudes and any vector whose squared
 * norm is more than kIdentityTol away from 1.
 */
class StateVector {
  public:
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    /// Rescales to unit norm before validating. Throws on a zero vector.
    static StateVector normalized(std::size_t n_qubits,
                                  std::vector<Complex> amplitudes);

    /// |b_0 b_1 ... b_{n-1}> with `index` giving the bitstring.
    static StateVector basis(std::size_t n_qubits, std::uint64_t index);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const noexcept;

    /// Multiplies every amplitude by a unit-modulus scalar.
    StateVector with_global_phase(Complex phase) const;

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Row-major 2x2 unitary. Construction throws NonUnitary if U^dagger U
/// differs from I by more than kUnitaryTol in any element.
class Unitary2 {
  public:
    explicit Unitary2(const std::array<Complex, 4> &elements);

    const Complex &operator()(std::size_t row, std::size_t col) const {
        return m_[row * 2 + col];
    }

  private:
    std::array<Complex, 4> m_;
};

/// Row-major 4x4 unitary acting on an ordered qubit pair (first = high bit).
class Unitary4 {
  public:
    explicit Unitary4(const std::array<Complex, 16> &elements);

    const Complex &operator()(std::size_t row, std::size_t col) const {
        return m_[row * 4 + col];
    }

  private:
    std::array<Complex, 16> m_;
};

/// Orthonormal single-qubit measurement basis {psi, psi_perp}.
struct MeasurementBasis {
    std::array<Complex, 2> psi;
    std::array<Complex, 2> psi_perp;

    /// {|0>, |1>}; psi is |0>.
    static MeasurementBasis computational();
};

enum class Outcome { Psi, PsiPerp };

/// Chooses the measurement branch: either forced (exact enumeration) or
/// drawn from a uniform variate in [0, 1).
class OutcomeSelector {
  public:
    static OutcomeSelector forced(Outcome outcome) {
        return OutcomeSelector(true, outcome, 0.0);
    }
    static OutcomeSelector sampled(double uniform) {
        return OutcomeSelector(false, Outcome::Psi, uniform);
    }

    bool is_forced() const noexcept { return forced_; }
    Outcome forced_outcome() const noexcept { return outcome_; }
    double uniform() const noexcept { return uniform_; }

  private:
    OutcomeSelector(bool forced, Outcome outcome, double uniform)
        : forced_(forced), outcome_(outcome), uniform_(uniform) {}

    bool forced_;
    Outcome outcome_;
    double uniform_;
};

struct MeasurementResult {
    Outcome outcome;
    double probability;
    StateVector collapsed; ///< remaining qubits, measured qubit removed
};

// Gates used by the protocol.
Unitary2 identity_gate();
Unitary2 hadamard_gate();
/// |1><0| - |0><1|
Unitary2 u1_gate();
/// |0><1| + |1><0|
Unitary2 u2_gate();
Unitary4 cnot_matrix();

StateVector make_bell();

MeasurementBasis basis_from_target(double alpha, Complex beta);

MeasurementResult measure_in_basis(const StateVector &state, std::size_t qubit,
                                   const MeasurementBasis &basis,
                                   const OutcomeSelector &select);

StateVector apply_1q(const StateVector &state, std::size_t qubit,
                     const Unitary2 &u);
StateVector apply_2q(const StateVector &state, std::size_t first,
                     std::size_t second, const Unitary4 &u);
StateVector apply_cnot(const StateVector &state, std::size_t control,
                       std::size_t target);
StateVector append_ancillas(const StateVector &state, std::size_t k);
StateVector cnot_fanout(const StateVector &state, std::size_t control,
                        std::span<const std::size_t> targets);

/// |<a|b>|^2, insensitive to a global phase on either argument.
double fidelity_mod_phase(const StateVector &a, const StateVector &b);

/// Rebuilds the Bell pair from its branch decomposition in the
/// {psi, psi_perp} basis and returns the largest elementwise deviation.
double check_decomposition(double alpha, Complex beta);

} // namespace rsp
