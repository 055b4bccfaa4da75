#include "blockform/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace blockform {

namespace {

using nlohmann::json;

std::string coord(std::size_t i, std::size_t j) {
    return "entries[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

std::size_t read_dim(const json& doc, const char* key) {
    if (!doc.contains(key)) throw InstanceFormatError(std::string("missing field '") + key + "'");
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw InstanceFormatError(std::string("field '") + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

double read_component(const json& v, std::size_t i, std::size_t j) {
    if (v.is_number()) {
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw InstanceFormatError("non-finite value at " + coord(i, j));
        return d;
    }
    if (v.is_null() || v.is_string()) throw InstanceFormatError("non-finite or non-numeric value at " + coord(i, j));
    throw InstanceFormatError(coord(i, j) + " must be a pair of numbers [re, im]");
}

json real_json(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

json report_json(const InequalityReport& rep) {
    json j = json::object();
    j["id"] = std::string(to_string(rep.id));
    j["r"] = rep.r;
    j["lhs_log"] = real_json(rep.lhs_log);
    j["rhs_log"] = real_json(rep.rhs_log);
    j["margin"] = real_json(rep.margin);
    j["holds"] = rep.holds;
    j["degenerate"] = rep.degenerate;
    j["imag_residual"] = real_json(rep.imag_residual);
    j["tol"] = real_json(rep.tol);
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

BlockMatrix parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InstanceFormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InstanceFormatError("instance must be a JSON object");
    const std::size_t n = read_dim(doc, "n");
    const std::size_t k = read_dim(doc, "k");
    const std::size_t m = n * k;
    if (!doc.contains("entries")) throw InstanceFormatError("missing field 'entries'");
    const json& rows = doc.at("entries");
    if (!rows.is_array() || rows.size() != m)
        throw InstanceFormatError("field 'entries' must be an array of " + std::to_string(m) + " rows");

    std::vector<Complex> values;
    values.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != m) {
            throw InstanceFormatError("entries[" + std::to_string(i) + "] must be an array of " + std::to_string(m) +
                                      " [re, im] pairs");
        }
        for (std::size_t j = 0; j < m; ++j) {
            const json& pair = row[j];
            if (!pair.is_array() || pair.size() != 2)
                throw InstanceFormatError(coord(i, j) + " must be a pair of numbers [re, im]");
            values.emplace_back(read_component(pair[0], i, j), read_component(pair[1], i, j));
        }
    }
    return BlockMatrix(n, k, ComplexMatrix(m, m, std::move(values)));
}

BlockMatrix read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InstanceFormatError("cannot open instance file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string instance_to_json(const BlockMatrix& h) {
    json doc = json::object();
    doc["n"] = h.n();
    doc["k"] = h.k();
    json rows = json::array();
    const ComplexMatrix& body = h.body();
    for (std::size_t i = 0; i < body.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < body.cols(); ++j) row.push_back(json::array({body(i, j).real(), body(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    doc["entries"] = std::move(rows);
    return doc.dump() + "\n";
}

std::string reports_to_json(std::span<const InequalityReport> reports) {
    json arr = json::array();
    for (const auto& rep : reports) arr.push_back(report_json(rep));
    return dump(arr);
}

std::string records_to_json(std::span<const FuzzRecord> records) {
    json arr = json::array();
    for (const auto& rec : records) {
        json j = report_json(rec.report);
        j["trial"] = rec.trial;
        j["kind"] = std::string(to_string(rec.kind));
        j["seed"] = rec.seed;
        j["n"] = rec.n;
        j["k"] = rec.k;
        arr.push_back(std::move(j));
    }
    return dump(arr);
}

std::string report_csv_row(const InequalityReport& rep, std::size_t n, std::size_t k, const std::string& seed) {
    std::string row;
    row += to_string(rep.id);
    row += ',' + std::to_string(rep.r);
    row += ',' + std::to_string(n);
    row += ',' + std::to_string(k);
    row += ',' + format_double(rep.lhs_log);
    row += ',' + format_double(rep.rhs_log);
    row += ',' + format_double(rep.margin);
    row += rep.holds ? ",true" : ",false";
    row += rep.degenerate ? ",true" : ",false";
    row += ',' + seed;
    return row;
}

std::string records_to_csv(std::span<const FuzzRecord> records) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& rec : records) out += report_csv_row(rec.report, rec.n, rec.k, std::to_string(rec.seed)) + "\n";
    return out;
}

std::string summary_to_json(const FuzzSummary& s) {
    json j = json::object();
    j["trials"] = s.trials;
    j["instances"] = s.instances;
    j["reports"] = s.reports;
    j["violations"] = s.violations;
    j["errors"] = s.errors;
    j["skipped"] = s.skipped;
    j["worst_margin"] = s.worst_margin ? real_json(*s.worst_margin) : json(nullptr);
    j["worst_instance_seed"] = s.worst_instance_seed;
    j["worst_kind"] = s.worst_kind ? json(std::string(to_string(*s.worst_kind))) : json(nullptr);
    j["worst_id"] = s.worst_id ? json(std::string(to_string(*s.worst_id))) : json(nullptr);
    j["worst_r"] = s.worst_r;
    json stats = json::object();
    for (const auto& [id, st] : s.per_inequality_stats) {
        json e = json::object();
        e["min_margin"] = st.min_margin ? real_json(*st.min_margin) : json(nullptr);
        e["mean_margin"] = st.mean_margin ? real_json(*st.mean_margin) : json(nullptr);
        e["degenerate"] = st.degenerate;
        e["count"] = st.count;
        stats[std::string(to_string(id))] = std::move(e);
    }
    j["per_inequality_stats"] = std::move(stats);
    j["error_messages"] = s.error_messages;
    return dump(j);
}

}  // namespace blockform
