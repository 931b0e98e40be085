#include "lpvdd/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lpvdd/systems.hpp"

namespace lpvdd {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return in;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json flat = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    }
    return flat;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols) {
        throw std::runtime_error("matrix entry has wrong length");
    }
    Eigen::MatrixXd m(rows, cols);
    Eigen::Index i = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[i++].get<double>();
    }
    return m;
}

json complexity_to_json(const Complexity& c) {
    return json{{"m", c.m}, {"lag", c.lag}, {"order", c.order}};
}

Complexity complexity_from_json(const json& j) {
    return Complexity{j.at("m").get<int>(), j.at("lag").get<int>(), j.at("order").get<int>()};
}

/// Samples arrive as an array of per-time arrays; returns an (n x T) block.
Eigen::MatrixXd samples_from_json(const json& j, int expected_rows) {
    if (!j.is_array()) {
        throw std::runtime_error("sample array expected");
    }
    const int cols = static_cast<int>(j.size());
    Eigen::MatrixXd m(expected_rows, cols);
    for (int k = 0; k < cols; ++k) {
        const json& col = j[static_cast<size_t>(k)];
        if (!col.is_array() || static_cast<int>(col.size()) != expected_rows) {
            throw std::runtime_error("sample " + std::to_string(k + 1) + " has wrong dimension");
        }
        for (int i = 0; i < expected_rows; ++i) m(i, k) = col[static_cast<size_t>(i)].get<double>();
    }
    return m;
}

std::vector<double> parse_csv_row(const std::string& line) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        row.push_back(std::stod(field));
    }
    return row;
}

}  // namespace

void write_dictionary(const DataDictionary& data, const Complexity& c,
                      const std::string& csv_path) {
    std::ofstream out = open_out(csv_path);
    const int n_u = data.w.inputs(), n_y = data.w.outputs(), n_p = data.p.dim();

    out << "k";
    for (int i = 1; i <= n_u; ++i) out << ",u" << i;
    for (int i = 1; i <= n_y; ++i) out << ",y" << i;
    for (int i = 1; i <= n_p; ++i) out << ",p" << i;
    out << "\n";
    for (int k = 0; k < data.length(); ++k) {
        out << data.w.start_index() + k;
        for (int i = 0; i < n_u + n_y; ++i) out << "," << format_double(data.w.samples()(i, k));
        for (int i = 0; i < n_p; ++i) out << "," << format_double(data.p.samples()(i, k));
        out << "\n";
    }
    out.close();

    json meta{{"n_u", n_u},
              {"n_y", n_y},
              {"n_p", n_p},
              {"seed", data.seed},
              {"complexity", complexity_to_json(c)},
              {"provenance", data.provenance}};
    open_out(csv_path + ".json") << meta.dump(2) << "\n";
}

StoredDictionary read_dictionary(const std::string& csv_path) {
    json meta;
    open_in(csv_path + ".json") >> meta;
    const int n_u = meta.at("n_u").get<int>();
    const int n_y = meta.at("n_y").get<int>();
    const int n_p = meta.at("n_p").get<int>();

    std::ifstream in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("dictionary CSV '" + csv_path + "' is empty");
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(parse_csv_row(line));
        if (static_cast<int>(rows.back().size()) != 1 + n_u + n_y + n_p) {
            throw std::runtime_error("dictionary CSV row " + std::to_string(rows.size()) +
                                     " has wrong field count");
        }
    }
    if (rows.empty()) {
        throw std::runtime_error("dictionary CSV '" + csv_path + "' has no samples");
    }

    const int n_d = static_cast<int>(rows.size());
    Eigen::MatrixXd w(n_u + n_y, n_d);
    Eigen::MatrixXd p(n_p, n_d);
    const int start = static_cast<int>(rows[0][0]);
    for (int k = 0; k < n_d; ++k) {
        for (int i = 0; i < n_u + n_y; ++i) w(i, k) = rows[static_cast<size_t>(k)][1 + i];
        for (int i = 0; i < n_p; ++i) p(i, k) = rows[static_cast<size_t>(k)][1 + n_u + n_y + i];
    }

    DataDictionary data(Trajectory(std::move(w), n_u, n_y, start),
                        SchedulingTrajectory(std::move(p), start),
                        meta.value("provenance", std::string{}),
                        meta.value("seed", std::uint64_t{0}));
    return StoredDictionary{std::move(data), complexity_from_json(meta.at("complexity"))};
}

void write_model(const LpvIoModel& model, const std::string& path) {
    json a = json::array();
    for (int i = 0; i <= model.a_degree(); ++i) {
        json row = json::array();
        for (int j = 0; j <= model.scheduling_dim(); ++j) {
            row.push_back(matrix_to_json(model.a_coeff(i, j)));
        }
        a.push_back(row);
    }
    json b = json::array();
    for (int i = 0; i <= model.b_degree(); ++i) {
        json row = json::array();
        for (int j = 0; j <= model.scheduling_dim(); ++j) {
            row.push_back(matrix_to_json(model.b_coeff(i, j)));
        }
        b.push_back(row);
    }
    json doc{{"n_u", model.inputs()},
             {"n_y", model.outputs()},
             {"n_p", model.scheduling_dim()},
             {"a", a},
             {"b", b},
             {"complexity", complexity_to_json(model.complexity())}};
    open_out(path) << doc.dump(2) << "\n";
}

LpvIoModel read_model(const std::string& path) {
    json doc;
    open_in(path) >> doc;
    const int n_u = doc.at("n_u").get<int>();
    const int n_y = doc.at("n_y").get<int>();
    const int n_p = doc.at("n_p").get<int>();

    auto tensor = [&](const json& j, Eigen::Index rows, Eigen::Index cols) {
        std::vector<std::vector<Eigen::MatrixXd>> out;
        for (const json& row : j) {
            std::vector<Eigen::MatrixXd> coeffs;
            if (static_cast<int>(row.size()) != n_p + 1) {
                throw std::runtime_error("model file: coefficient row has wrong length");
            }
            for (const json& m : row) coeffs.push_back(matrix_from_json(m, rows, cols));
            out.push_back(std::move(coeffs));
        }
        return out;
    };
    return LpvIoModel(tensor(doc.at("a"), n_y, n_y), tensor(doc.at("b"), n_y, n_u),
                      complexity_from_json(doc.at("complexity")));
}

StoredSimProblem read_sim_problem(const std::string& path) {
    json doc;
    open_in(path) >> doc;
    fs::path dict_path(doc.at("dictionary").get<std::string>());
    if (dict_path.is_relative()) {
        dict_path = fs::path(path).parent_path() / dict_path;
    }
    StoredDictionary stored = read_dictionary(dict_path.string());

    const int n_w = stored.data.w.dim();
    const int n_u = stored.data.w.inputs();
    const int n_p = stored.data.p.dim();

    SimProblem prob{std::move(stored.data),
                    samples_from_json(doc.at("w_ini"), n_w),
                    samples_from_json(doc.at("p_ini"), n_p),
                    samples_from_json(doc.at("u_r"), n_u),
                    samples_from_json(doc.at("p_r"), n_p)};
    return StoredSimProblem{std::move(prob), stored.complexity};
}

void write_sim_result(const SimResult& result, const std::string& csv_path,
                      const std::string& json_path) {
    std::ofstream out = open_out(csv_path);
    out << "k";
    for (int i = 1; i <= result.y_r.rows(); ++i) out << ",y" << i;
    out << "\n";
    for (int k = 0; k < result.y_r.cols(); ++k) {
        out << k + 1;
        for (int i = 0; i < result.y_r.rows(); ++i) out << "," << format_double(result.y_r(i, k));
        out << "\n";
    }
    out.close();

    json diag{{"residual", result.residual},
              {"uniqueness",
               result.uniqueness == Uniqueness::unique ? "unique" : "non_unique"},
              {"output_freedom", result.output_freedom},
              {"g_norm", result.g.norm()},
              {"consistent", result.consistent}};
    open_out(json_path) << diag.dump(2) << "\n";
}

StoredControlProblem read_control_problem(const std::string& path) {
    json doc;
    open_in(path) >> doc;
    fs::path dict_path(doc.at("dictionary").get<std::string>());
    if (dict_path.is_relative()) {
        dict_path = fs::path(path).parent_path() / dict_path;
    }
    StoredDictionary stored = read_dictionary(dict_path.string());

    const int n_w = stored.data.w.dim();
    const int n_u = stored.data.w.inputs();
    const int n_y = stored.data.w.outputs();
    const int n_p = stored.data.p.dim();
    const int t_r = doc.at("T_r").get<int>();

    auto weight = [&](const char* key, int dim) -> Eigen::MatrixXd {
        if (!doc.contains(key) || (doc[key].is_string() && doc[key] == "identity")) {
            return Eigen::MatrixXd::Identity(dim, dim);
        }
        return matrix_from_json(doc[key], dim, dim);
    };

    ControlProblem prob{std::move(stored.data),
                        samples_from_json(doc.at("w_ini"), n_w),
                        samples_from_json(doc.at("p_ini"), n_p),
                        t_r,
                        weight("Q", t_r * n_y),
                        weight("R", t_r * n_u),
                        scheduling_map(doc.at("psi").get<std::string>()),
                        doc.contains("p_r_init") ? samples_from_json(doc["p_r_init"], n_p)
                                                 : Eigen::MatrixXd(),
                        doc.value("tol", 1e-6),
                        doc.value("max_iter", 50)};
    return StoredControlProblem{std::move(prob), stored.complexity};
}

void write_control_result(const ControlResult& result, const std::string& final_csv_path,
                          const std::string& iterations_csv_path,
                          const std::string& json_path) {
    const int n_u = static_cast<int>(result.u_r.rows());
    const int n_y = static_cast<int>(result.y_r.rows());
    const int n_p = static_cast<int>(result.p_r.rows());

    auto header = [&](std::ofstream& out) {
        for (int i = 1; i <= n_u; ++i) out << ",u" << i;
        for (int i = 1; i <= n_y; ++i) out << ",y" << i;
        for (int i = 1; i <= n_p; ++i) out << ",p" << i;
        out << "\n";
    };
    auto row = [&](std::ofstream& out, const ControlIterate& it, int k) {
        for (int i = 0; i < n_u; ++i) out << "," << format_double(it.u_r(i, k));
        for (int i = 0; i < n_y; ++i) out << "," << format_double(it.y_r(i, k));
        for (int i = 0; i < n_p; ++i) out << "," << format_double(it.p_r(i, k));
        out << "\n";
    };

    std::ofstream final_out = open_out(final_csv_path);
    final_out << "k";
    header(final_out);
    const ControlIterate last{result.u_r, result.y_r, result.p_r, 0.0, 0.0};
    for (int k = 0; k < result.u_r.cols(); ++k) {
        final_out << k + 1;
        row(final_out, last, k);
    }

    std::ofstream iter_out = open_out(iterations_csv_path);
    iter_out << "iter,k";
    header(iter_out);
    for (size_t n = 0; n < result.history.size(); ++n) {
        for (int k = 0; k < result.history[n].u_r.cols(); ++k) {
            iter_out << n + 1 << "," << k + 1;
            row(iter_out, result.history[n], k);
        }
    }

    json summary{{"iterations", result.iterations}, {"converged", result.converged}};
    json changes = json::array();
    json objectives = json::array();
    for (const auto& it : result.history) {
        changes.push_back(it.p_change);
        objectives.push_back(it.objective);
    }
    summary["p_change"] = changes;
    summary["objective"] = objectives;
    open_out(json_path) << summary.dump(2) << "\n";
}

}  // namespace lpvdd
