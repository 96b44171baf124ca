#ifndef VSS_TRANSFORM_HPP
#define VSS_TRANSFORM_HPP

#include "vss/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vss {

enum class Method { trace, det_raw, hybrid, lipschitz, prefactor_free };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct TransformDiagnostics {
    double det_log_abs = 0.0;    // log |det Phi_n|
    double det_arg = 0.0;        // principal argument of det Phi_n
    Complex quad_term{0.0, 0.0}; // (T/n) g^T Psi_n g
    bool hybrid_sign_warning = false;
};

// One evaluation of the Fourier-Laplace transform.
struct TransformValue {
    Complex value{0.0, 0.0};
    std::optional<int> k; // rotation count, when the method computes one
    Method method = Method::det_raw;
    int n_used = 0;
    TransformDiagnostics diag;
};

/**
 * Trace formula: xi = exp(phi_n + (T/n) g^T Psi_n g) with
 * phi_n = -(T/n) sum_i Tr(Psi_{n,i} SigmaDot_{n,i}).
 *
 * Continuous in (u, w) by construction and free of branch issues, but costs
 * O(n^4) per point; it serves as the coarse sign proxy and as a reference.
 */
TransformValue eval_trace(const KernelMatrices& mats, const ArgPoint& point);

// Determinant formula with the principal square root and no sign
// correction; exhibits spurious sign flips where arg(det Phi_n) wraps.
TransformValue eval_det_raw(const KernelMatrices& mats, const ArgPoint& point);

// Hybrid sign adjustment: flips eval_det_raw when both the real and the
// imaginary part disagree in sign with a coarse trace-formula proxy.
TransformValue eval_hybrid(const KernelMatrices& fine, const KernelMatrices& coarse,
                           const ArgPoint& point, double coarse_floor = 1e-12);

// Prefactor-free evaluation through det(sqrt(Phi_n)) built from
// Re(PhiTilde_n)^{±1/2}; no rotation count is needed.
TransformValue eval_prefactor_free(const KernelMatrices& mats, const ArgPoint& point);

/**
 * phi-tilde_n = (T/n) * int_0^1 Tr(Psi_{n,s} Sigma_n) ds by adaptive
 * Simpson quadrature; satisfies exp(-2 phi_tilde_n) = det(Phi_n).
 */
Complex phi_tilde_n(const KernelMatrices& mats, const ArgPoint& point,
                    double s_quad_tol = 1e-10);

/**
 * Rotation count k from pi*k = arg(det)/2 + Im(phi).  The determinant
 * modulus must be consistent with exp(-2 Re(phi)) and the result must land
 * within 1e-6 of an integer, otherwise the two inputs were computed at
 * different discretizations and an InconsistencyError is raised.
 */
int rotation_count(const LogPolarDet& det_value, Complex phi);

// Scan axis for sign-correction sweeps: vary Im(u) or Im(w).
enum class ScanAxis { u, w };

struct LipschitzScan {
    ScanAxis axis = ScanAxis::u;
    double fixed_real = 0.5;  // real part of the scanned variable
    Complex other{0.0, 0.0};  // value of the non-scanned variable
    double upper = 0.0;       // scan upper bound U
    double l_theta = 0.0;     // Lipschitz bound for the determinant argument
};

/**
 * Lipschitz-based rotation counting.  Construction precomputes
 * arg(det Phi_n) on the grid of pitch pi/L_theta and accumulates the
 * crossing table (the node-independent part); eval() then resolves any node
 * in [0, U] with a single extra determinant evaluation.
 */
class LipschitzEvaluator {
public:
    LipschitzEvaluator(const KernelMatrices& mats, const LipschitzScan& scan);

    TransformValue eval(double node) const;

    const std::vector<double>& grid_nodes() const { return grid_; }
    const std::vector<int>& k_table() const { return k_; }

private:
    ArgPoint point_at(double x) const;

    const KernelMatrices& mats_;
    LipschitzScan scan_;
    std::vector<double> grid_;
    std::vector<double> arg_;
    std::vector<int> k_;
};

// Convenience wrapper: builds the scan table and evaluates one node.
TransformValue eval_lipschitz(const KernelMatrices& mats, const LipschitzScan& scan,
                              double node);

// Number of transform evaluations since the last reset (test instrumentation).
std::uint64_t transform_eval_count();
void reset_transform_eval_count();

} // namespace vss

#endif
