#pragma once

#include <string>

#include "lpvdd/control.hpp"
#include "lpvdd/ddrep.hpp"
#include "lpvdd/model.hpp"
#include "lpvdd/simulate.hpp"

namespace lpvdd {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

struct StoredDictionary {
    DataDictionary data;
    Complexity complexity;
};

/// Dictionary CSV with header k,u1..,y1..,p1.. plus a metadata sidecar at
/// `csv_path + ".json"` carrying the dimensions, seed, and complexity.
void write_dictionary(const DataDictionary& data, const Complexity& c,
                      const std::string& csv_path);
StoredDictionary read_dictionary(const std::string& csv_path);

/// Model file: JSON with the coefficient tensors as row-major flat arrays.
void write_model(const LpvIoModel& model, const std::string& path);
LpvIoModel read_model(const std::string& path);

/// Simulation problem: JSON referencing a dictionary CSV (relative paths are
/// resolved against the problem file) plus inline sample arrays.
struct StoredSimProblem {
    SimProblem problem;
    Complexity complexity;
};
StoredSimProblem read_sim_problem(const std::string& path);

void write_sim_result(const SimResult& result, const std::string& csv_path,
                      const std::string& json_path);

struct StoredControlProblem {
    ControlProblem problem;
    Complexity complexity;
};
StoredControlProblem read_control_problem(const std::string& path);

/// Final trajectories as CSV (k,u..,y..,p..), per-iteration trajectories as a
/// long-format CSV (iter,k,u..,y..,p..), and a JSON summary.
void write_control_result(const ControlResult& result, const std::string& final_csv_path,
                          const std::string& iterations_csv_path,
                          const std::string& json_path);

}  // namespace lpvdd
