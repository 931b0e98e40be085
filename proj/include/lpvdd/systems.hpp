#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpvdd/control.hpp"
#include "lpvdd/ddrep.hpp"
#include "lpvdd/model.hpp"
#include "lpvdd/rng.hpp"

namespace lpvdd {

/// Mass-spring-damper with scheduling-dependent stiffness s(p) = s0 + s1 p,
/// discretized with sample time Ts. SISO, two lags, n_p = 1. The defaults are
/// the benchmark parameter set used throughout the built-in experiments.
LpvIoModel msd_model(double mass = 25.0, double s0 = 5.5, double s1 = 4.5, double damping = 1.0,
                     double Ts = 0.1);

/// First-order system y(k) + (1 + p(k-1)) y(k-1) = u(k) + p(k-1) u(k-1);
/// the built-in counterexample for input-only excitation tests.
LpvIoModel example2_model();

/// Two-lag nonlinear benchmark
///   y(k) = (0.4 tanh(y(k-1)) - 0.2) y(k-1) + (1 - 0.4 tanh(y(k-2))) y(k-2)
///          + 1.2 u(k-1) + 0.4 sin(u(k-1)) exp(-y^2(k-1)).
class NonlinearExample {
public:
    /// init holds two past (u, y) samples; the last column is the sample
    /// immediately before the first simulated step.
    Eigen::MatrixXd simulate(const Eigen::MatrixXd& u, const Eigen::MatrixXd& u_init,
                             const Eigen::MatrixXd& y_init) const;
};

/// Two readings of the nonlinear benchmark's scheduling map. With the sinc
/// reading, p_2 u = sin(u) exp(-y^2) reproduces the nonlinearity exactly;
/// the sin reading is kept for comparison.
enum class NlMapReading { sinc, sin };

SchedulingMap nl_scheduling_map(NlMapReading reading = NlMapReading::sinc);

struct NlExampleSystem {
    NonlinearExample system;
    SchedulingMap psi;
    LpvIoModel embedding;
};

/// The nonlinear benchmark, its scheduling map, and the LPV model the map
/// embeds it into.
NlExampleSystem nl_example_system(NlMapReading reading = NlMapReading::sinc);

/// Largest discrepancy between the nonlinear simulation and the embedding
/// simulated with p = psi(u, y), over `steps` random-input samples.
double nl_embedding_error(NlMapReading reading, int steps, std::uint64_t seed);

/// Named scheduling maps usable across the file-format boundary.
SchedulingMap scheduling_map(const std::string& name);
std::vector<std::string> scheduling_map_names();

struct RandomModelOptions {
    int max_lag = 3;
    int max_scheduling_dim = 2;
    /// Upper bound imposed on sum_i max_{|p|<=1} |a_i(p)|; keeps trajectories
    /// bounded for scheduling inside the unit box.
    double stability_margin = 0.9;
    bool allow_feedthrough = true;
};

/// Random SISO model with coefficients drawn i.i.d. from [-1, 1], rescaled
/// for boundedness. Draws whose LTI-part polynomials fail a numeric
/// coprimeness test (Sylvester resultant at p = 0) are rejected, so the
/// declared complexity (m, lag, order) = (1, n_r, n_r) is reliable.
LpvIoModel random_siso_model(Rng& rng, const RandomModelOptions& opts = {});

enum class ExcitationKind {
    gaussian,     // u, p i.i.d. standard normal
    uniform_box,  // u, p i.i.d. uniform on [-1, 1]
};

/// Simulates the model from a zero init window under random excitation and
/// packages the result. Draw order (all of u, then all of p) is fixed, so a
/// seed pins the dictionary bit-for-bit.
DataDictionary excited_dictionary(const LpvIoModel& model, std::uint64_t seed, int n_d,
                                  ExcitationKind kind = ExcitationKind::gaussian);

/// Dictionary of the counterexample system from y(0) = u(0) = p(0) = 1 with
/// i.i.d. normal scheduling. With feedback_input the input follows the policy
/// u(k) = p(k-1)(1 - u(k-1)) + 2 that pins the output at 1; otherwise the
/// input is i.i.d. normal.
DataDictionary example2_dictionary(std::uint64_t seed, int n_d, bool feedback_input = true);

/// Dictionary of the nonlinear benchmark under i.i.d. normal input from a zero
/// init window, with the scheduling recorded through the chosen map reading.
DataDictionary nl_example_dictionary(std::uint64_t seed, int n_d,
                                     NlMapReading reading = NlMapReading::sinc);

}  // namespace lpvdd
