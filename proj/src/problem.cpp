#include "gkz/problem.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace gkz {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("problem file: " + msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail("unknown key \"" + key + "\" in " + where);
}

IntegerMatrix parse_int_matrix(const json& j, const std::string& name) {
    if (!j.is_array()) fail("\"" + name + "\" must be an array of rows");
    std::vector<std::vector<Int>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) fail("\"" + name + "\" rows must be arrays");
        std::vector<Int> r;
        for (const auto& el : row) {
            if (!el.is_number_integer() && !el.is_number_unsigned())
                fail("\"" + name + "\" entries must be integers");
            r.push_back(Int(el.get<long long>()));
        }
        rows.push_back(std::move(r));
        if (rows.back().size() != rows.front().size())
            fail("\"" + name + "\" rows must have equal length");
    }
    if (rows.empty()) return IntegerMatrix(0, 0);
    return IntegerMatrix::from_rows(rows);
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& name) {
    if (!j.is_array()) fail("\"" + name + "\" must be an array of [re, im] pairs");
    std::vector<Complex> out;
    for (const auto& el : j) {
        if (!el.is_array() || el.size() != 2 || !el[0].is_number() || !el[1].is_number())
            fail("\"" + name + "\" entries must be [re, im] number pairs");
        out.emplace_back(el[0].get<double>(), el[1].get<double>());
    }
    return out;
}

} // namespace

ProblemFile parse_problem_json(const json& j) {
    if (!j.is_object()) fail("top level must be an object");
    check_keys(j, {"A", "lattice", "gamma", "c", "u", "quadrature"}, "the top level");

    if (!j.contains("A")) fail("missing required key \"A\"");
    if (!j.contains("u")) fail("missing required key \"u\"");
    const bool has_gamma = j.contains("gamma"), has_c = j.contains("c");
    if (has_gamma == has_c) fail("exactly one of \"gamma\" and \"c\" is required");

    if (!j.at("u").is_array()) fail("\"u\" must be an array of positive numbers");
    std::vector<double> u_values;
    for (const auto& el : j.at("u")) {
        if (!el.is_number()) fail("\"u\" entries must be numbers");
        u_values.push_back(el.get<double>());
        if (!(u_values.back() > 0.0)) fail("\"u\" entries must be strictly positive");
    }

    IntegerMatrix a = parse_int_matrix(j.at("A"), "A");
    IntegerMatrix lattice;
    const bool has_lattice = j.contains("lattice");
    if (has_lattice) lattice = parse_int_matrix(j.at("lattice"), "lattice");

    // Infer the variable count: columns of A, else of the lattice, else |u|.
    std::size_t n = a.cols();
    if (a.rows() == 0) {
        n = has_lattice && lattice.rows() > 0 ? lattice.cols() : u_values.size();
        a = IntegerMatrix(0, n);
    }
    if (u_values.size() != n) fail("\"u\" length does not match the variable count");
    if (has_lattice && lattice.rows() == 0) lattice = IntegerMatrix(0, n);

    ProblemFile pf;
    pf.data = has_lattice ? build_gkz_data(a, lattice) : build_gkz_data(a);

    if (has_gamma) {
        std::vector<Complex> g = parse_complex_list(j.at("gamma"), "gamma");
        if (g.size() != n) fail("\"gamma\" length does not match the variable count");
        pf.gamma.gamma = std::move(g);
    } else {
        std::vector<Complex> c = parse_complex_list(j.at("c"), "c");
        if (c.size() != a.rows()) fail("\"c\" length does not match the exponent row count");
        pf.gamma = solve_spectral_affine(a, c).gamma0;
        pf.gamma_from_constraint = true;
    }

    pf.u = ArgumentVector::from_values(u_values);

    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        if (!q.is_object()) fail("\"quadrature\" must be an object");
        check_keys(q, {"points_per_dim", "tail_tolerance", "max_halfwidth", "refinement"},
                   "\"quadrature\"");
        if (q.contains("points_per_dim")) {
            if (!q.at("points_per_dim").is_number_integer())
                fail("\"points_per_dim\" must be an integer");
            pf.quadrature.points_per_dim = q.at("points_per_dim").get<int>();
        }
        if (q.contains("tail_tolerance")) {
            if (!q.at("tail_tolerance").is_number()) fail("\"tail_tolerance\" must be a number");
            pf.quadrature.tail_tolerance = q.at("tail_tolerance").get<double>();
        }
        if (q.contains("max_halfwidth")) {
            if (!q.at("max_halfwidth").is_number()) fail("\"max_halfwidth\" must be a number");
            pf.quadrature.max_halfwidth = q.at("max_halfwidth").get<double>();
        }
        if (q.contains("refinement")) {
            if (!q.at("refinement").is_number_integer()) fail("\"refinement\" must be an integer");
            pf.quadrature.refinement = q.at("refinement").get<int>();
        }
        if (pf.quadrature.points_per_dim < 2) fail("\"points_per_dim\" must be at least 2");
        if (!(pf.quadrature.tail_tolerance > 0.0) || !(pf.quadrature.tail_tolerance < 1.0))
            fail("\"tail_tolerance\" must lie in (0,1)");
        if (!(pf.quadrature.max_halfwidth > 0.0)) fail("\"max_halfwidth\" must be positive");
        if (pf.quadrature.refinement < 1 || pf.quadrature.refinement > 8)
            fail("\"refinement\" must lie in [1,8]");
    }
    return pf;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("problem file: cannot open \"" + path + "\"");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("problem file: JSON syntax error: " + std::string(e.what()));
    }
    return parse_problem_json(j);
}

} // namespace gkz
