#include "hiconvex/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hiconvex {

namespace {

Interval interval_from_json(const nlohmann::json& j, const char* field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::invalid_argument(std::string("parse: ") + field +
                                    " must be a two-number array [lo, hi]");
    }
    return Interval{j[0].get<double>(), j[1].get<double>()};
}

double number_field(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number()) {
        throw std::invalid_argument(std::string("parse: missing numeric field '") + field + "'");
    }
    return j[field].get<double>();
}

} // namespace

FunctionModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("parse: model must be a JSON object");
    const std::string kind = j.value("kind", std::string("catalog"));
    if (kind == "catalog") {
        if (!j.contains("name") || !j["name"].is_string()) {
            throw std::invalid_argument("parse: catalog model needs a string 'name'");
        }
        std::optional<double> alpha;
        if (j.contains("alpha")) {
            if (!j["alpha"].is_number()) throw std::invalid_argument("parse: alpha must be numeric");
            alpha = j["alpha"].get<double>();
        }
        std::optional<Interval> domain;
        if (j.contains("domain")) domain = interval_from_json(j["domain"], "domain");
        return FunctionModel::catalog(j["name"].get<std::string>(), alpha, domain);
    }
    if (kind == "polynomial") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
            throw std::invalid_argument("parse: polynomial model needs a 'coeffs' array");
        }
        std::vector<double> coeffs;
        for (const auto& c : j["coeffs"]) {
            if (!c.is_number()) throw std::invalid_argument("parse: coeffs must be numeric");
            coeffs.push_back(c.get<double>());
        }
        if (!j.contains("domain")) {
            throw std::invalid_argument("parse: polynomial model needs a 'domain'");
        }
        return FunctionModel::polynomial(std::move(coeffs), interval_from_json(j["domain"], "domain"));
    }
    if (kind == "blocks") {
        if (!j.contains("quad") || !j["quad"].is_array() || j["quad"].size() != 3) {
            throw std::invalid_argument("parse: blocks model needs a three-entry 'quad'");
        }
        std::array<double, 3> quad{};
        for (int i = 0; i < 3; ++i) {
            if (!j["quad"][static_cast<std::size_t>(i)].is_number()) {
                throw std::invalid_argument("parse: quad entries must be numeric");
            }
            quad[static_cast<std::size_t>(i)] = j["quad"][static_cast<std::size_t>(i)].get<double>();
        }
        std::vector<Knot> knots;
        if (j.contains("knots")) {
            if (!j["knots"].is_array()) throw std::invalid_argument("parse: knots must be an array");
            for (const auto& k : j["knots"]) {
                knots.push_back(Knot{number_field(k, "a"), number_field(k, "c")});
            }
        }
        if (!j.contains("domain")) throw std::invalid_argument("parse: blocks model needs a 'domain'");
        return FunctionModel::blocks(quad, std::move(knots), interval_from_json(j["domain"], "domain"));
    }
    throw std::invalid_argument("parse: unknown model kind '" + kind + "'");
}

nlohmann::json model_to_json(const FunctionModel& model) {
    nlohmann::json j;
    j["domain"] = {model.domain().lo, model.domain().hi};
    if (model.is_blocks()) {
        j["kind"] = "blocks";
        j["quad"] = model.quad();
        nlohmann::json knots = nlohmann::json::array();
        for (const Knot& k : model.knots()) knots.push_back({{"a", k.a}, {"c", k.c}});
        j["knots"] = knots;
        return j;
    }
    if (model.name() == "poly") {
        j["kind"] = "polynomial";
        j["coeffs"] = model.coeffs();
        return j;
    }
    j["kind"] = "catalog";
    j["name"] = model.name();
    if (model.alpha().has_value()) j["alpha"] = *model.alpha();
    return j;
}

DiscreteMeasure measure_from_json(const nlohmann::json& j, MeasureKind kind) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
        throw std::invalid_argument("parse: measure needs an 'atoms' array");
    }
    std::vector<Atom> atoms;
    for (const auto& a : j["atoms"]) {
        atoms.push_back(Atom{number_field(a, "x"), number_field(a, "w")});
    }
    return DiscreteMeasure(std::move(atoms), kind);
}

nlohmann::json measure_to_json(const DiscreteMeasure& mu) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const Atom& a : mu.atoms()) atoms.push_back({{"x", a.x}, {"w", a.w}});
    return nlohmann::json{{"atoms", atoms}};
}

SymmetricMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw std::invalid_argument("parse: matrix needs an integer 'n'");
    }
    const int n = j["n"].get<int>();
    if (!j.contains("rows") || !j["rows"].is_array() || static_cast<int>(j["rows"].size()) != n) {
        throw std::invalid_argument("parse: matrix needs n 'rows'");
    }
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (const auto& row : j["rows"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw std::invalid_argument("parse: each matrix row needs n entries");
        }
        for (const auto& v : row) {
            if (!v.is_number()) throw std::invalid_argument("parse: matrix entries must be numeric");
            entries.push_back(v.get<double>());
        }
    }
    return SymmetricMatrix(n, std::move(entries));
}

nlohmann::json matrix_to_json(const SymmetricMatrix& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < a.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < a.size(); ++j) row.push_back(a(i, j));
        rows.push_back(row);
    }
    return nlohmann::json{{"n", a.size()}, {"rows", rows}};
}

nlohmann::json table_to_json(const DividedDiffTable& table) {
    nlohmann::json j;
    j["xs"] = table.xs();
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k <= table.max_order(); ++k) rows.push_back(table.row(k));
    j["rows"] = rows;
    return j;
}

SampleGrid ingest_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("parse: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("parse: empty file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,f") {
        throw std::invalid_argument("malformed-row: line 1 (expected header 'x,f')");
    }
    std::vector<double> xs, ys;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("malformed-row: line " + std::to_string(line_no));
        }
        double x = 0.0, y = 0.0;
        try {
            std::size_t used_x = 0, used_y = 0;
            const std::string xs_str = line.substr(0, comma);
            const std::string ys_str = line.substr(comma + 1);
            x = std::stod(xs_str, &used_x);
            y = std::stod(ys_str, &used_y);
            if (used_x != xs_str.size() || used_y != ys_str.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed-row: line " + std::to_string(line_no));
        }
        if (!xs.empty() && x <= xs.back()) {
            throw std::invalid_argument("unsorted-data: line " + std::to_string(line_no));
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    return SampleGrid(xs, ys);
}

nlohmann::json json_from_arg(const std::string& arg) {
    std::string text = arg;
    std::string source = "inline argument";
    const std::size_t first = arg.find_first_not_of(" \t\r\n");
    const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
    if (!inline_json) {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("parse: cannot open '" + arg + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        source = arg;
    }
    nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        throw std::invalid_argument("parse: invalid JSON in " + source);
    }
    return parsed;
}

} // namespace hiconvex
