#include "hiconvex/report.hpp"

namespace hiconvex {

nlohmann::json to_json(const InequalityReport& r) {
    return nlohmann::json{{"verdict", r.verdict}, {"margin", r.margin}, {"lhs", r.lhs},
                          {"rhs", r.rhs},         {"witness", r.witness}, {"cases", r.cases}};
}

InequalityReport report_from_json(const nlohmann::json& j) {
    InequalityReport r;
    r.verdict = j.at("verdict").get<bool>();
    r.margin = j.at("margin").get<double>();
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.witness = j.value("witness", nlohmann::json::object());
    r.cases = j.value("cases", std::vector<std::string>{});
    return r;
}

} // namespace hiconvex
