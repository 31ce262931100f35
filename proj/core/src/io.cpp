#include "odiff/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "odiff/error.hpp"

namespace odiff {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

json parse_object(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("expected a JSON object");
    }
    return doc;
}

}  // namespace

std::string tableau_to_json(const ObreshkovTableau& t) {
    json doc;
    doc["k"] = t.k();
    doc["m"] = t.m();
    doc["h"] = t.h();
    doc["c0"] = t.c0();
    json rows = json::array();
    for (int i = 1; i <= t.k(); ++i) {
        auto r = t.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["c"] = std::move(rows);
    if (!t.label().empty()) {
        doc["label"] = t.label();
    }
    if (t.omega_select()) {
        doc["omega_select"] = *t.omega_select();
    }
    return doc.dump();
}

ObreshkovTableau tableau_from_json(std::string_view text) {
    const auto doc = parse_object(text);
    auto k = field<int>(doc, "k");
    auto m = field<int>(doc, "m");
    auto h = field<double>(doc, "h");
    auto c0 = field<std::vector<double>>(doc, "c0");
    auto c = field<std::vector<std::vector<double>>>(doc, "c");
    std::string label;
    if (doc.contains("label") && !doc["label"].is_null()) {
        label = field<std::string>(doc, "label");
    }
    std::optional<double> omega;
    if (doc.contains("omega_select") && !doc["omega_select"].is_null()) {
        omega = field<double>(doc, "omega_select");
    }
    try {
        return ObreshkovTableau(k, m, h, std::move(c0), std::move(c), std::move(label), omega);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string constraints_to_json(const ConstraintSet& c) {
    json doc;
    doc["k"] = c.k;
    doc["m"] = c.m;
    doc["h"] = c.h;
    json fixed = json::array();
    for (const auto& [slot, value] : c.fixed) {
        fixed.push_back({{"order", slot.order}, {"lag", slot.lag}, {"value", value}});
    }
    doc["fixed"] = std::move(fixed);
    doc["origin_multiplicity"] = c.origin_multiplicity;
    doc["frequencies"] = c.frequencies;
    return doc.dump();
}

ConstraintSet constraints_from_json(std::string_view text) {
    const auto doc = parse_object(text);
    ConstraintSet c;
    c.k = field<int>(doc, "k");
    c.m = field<int>(doc, "m");
    c.h = field<double>(doc, "h");
    c.origin_multiplicity = field<int>(doc, "origin_multiplicity");
    if (doc.contains("frequencies")) {
        c.frequencies = field<std::vector<double>>(doc, "frequencies");
    }
    if (doc.contains("fixed")) {
        const auto& fixed = doc["fixed"];
        if (!fixed.is_array()) {
            throw ParseError("field 'fixed' must be an array");
        }
        for (const auto& entry : fixed) {
            if (!entry.is_object()) {
                throw ParseError("entries of 'fixed' must be objects");
            }
            Slot slot{field<int>(entry, "order"), field<int>(entry, "lag")};
            if (!c.fixed.emplace(slot, field<double>(entry, "value")).second) {
                throw ParseError("slot fixed twice");
            }
        }
    }
    return c;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace odiff
