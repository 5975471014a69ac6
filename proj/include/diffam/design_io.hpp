#pragma once

// Single-file JSON interchange for groups, design documents and
// verification reports.  Elements serialize as mixed-radix codes in [0, v);
// the schema is versioned and parsing validates every code against the
// group order.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffam/designs.hpp"
#include "diffam/field.hpp"
#include "diffam/group.hpp"
#include "diffam/verify.hpp"

namespace diffam {

using nlohmann::json;

inline json group_to_json(const Group& g) {
    switch (g.kind) {
        case GroupKind::cyclic:
            return {{"kind", "cyclic"}, {"order", g.order}};
        case GroupKind::product:
            return {{"kind", "product"}, {"moduli", g.moduli}};
        case GroupKind::field_additive:
            return {{"kind", "field_additive"},
                    {"p", g.moduli.front()},
                    {"m", static_cast<i64>(g.moduli.size())}};
    }
    throw std::logic_error("group_to_json: unknown kind");
}

inline Group group_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return cyclic_group(j.at("order").get<i64>());
    if (kind == "product") return make_group(GroupKind::product, j.at("moduli").get<std::vector<i64>>());
    if (kind == "field_additive") {
        const i64 p = j.at("p").get<i64>();
        const i64 m = j.at("m").get<i64>();
        if (m < 1) throw std::invalid_argument("group_from_json: m must be >= 1");
        return make_group(GroupKind::field_additive, std::vector<i64>(static_cast<std::size_t>(m), p));
    }
    throw std::invalid_argument("group_from_json: unknown kind '" + kind + "'");
}

// Field descriptor (no tables): {"p":2,"m":6,"modulus":[1,1,0,0,0,0,1]},
// coefficient list constant term first.
inline json field_to_json(const Field& f) {
    return {{"p", f.p}, {"m", f.m}, {"modulus", f.modulus}};
}

inline json report_to_json(const VerificationReport& rep) {
    json hist = json::object();
    for (const auto& [mult, cnt] : rep.histogram) hist[std::to_string(mult)] = cnt;
    json j{{"kind", rep.kind}, {"pass", rep.pass}, {"histogram", hist},
           {"offenders", rep.offenders}};
    for (const auto& [name, value] : rep.computed) j[name] = value;
    if (!rep.failure.empty()) j["failure"] = rep.failure;
    if (rep.degenerate) j["degenerate"] = true;
    return j;
}

struct DesignDocument {
    int schema_version = 1;
    Group group;
    BlockList blocks;
    i64 v = 0;
    std::vector<i64> K;
    i64 gamma = 0;
    i64 u = 0;
    json provenance = json::object();
    std::optional<json> verification;
    std::optional<std::vector<std::vector<std::size_t>>> classes;  // for NRB documents
};

inline DesignDocument document_from_family(const DesignFamily& fam, json provenance) {
    DesignDocument doc;
    doc.group = fam.group;
    doc.blocks = fam.blocks;
    doc.v = fam.v;
    doc.K = fam.K;
    doc.gamma = fam.gamma;
    doc.u = fam.u;
    doc.provenance = std::move(provenance);
    return doc;
}

inline json document_to_json(const DesignDocument& doc) {
    json j{{"schema_version", doc.schema_version},
           {"group", group_to_json(doc.group)},
           {"blocks", doc.blocks},
           {"claimed", {{"v", doc.v}, {"K", doc.K}, {"gamma", doc.gamma}, {"u", doc.u}}},
           {"provenance", doc.provenance}};
    if (doc.verification) j["verification"] = *doc.verification;
    if (doc.classes) j["classes"] = *doc.classes;
    return j;
}

inline DesignDocument document_from_json(const json& j) {
    DesignDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != 1)
        throw std::invalid_argument("document_from_json: unsupported schema_version");
    doc.group = group_from_json(j.at("group"));
    doc.blocks = j.at("blocks").get<BlockList>();
    for (const auto& b : doc.blocks)
        for (i64 x : b)
            if (!doc.group.is_valid_code(x))
                throw std::invalid_argument("document_from_json: block code out of range");
    const auto& claimed = j.at("claimed");
    doc.v = claimed.at("v").get<i64>();
    doc.K = claimed.at("K").get<std::vector<i64>>();
    doc.gamma = claimed.at("gamma").get<i64>();
    doc.u = claimed.at("u").get<i64>();
    if (doc.v != doc.group.order)
        throw std::invalid_argument("document_from_json: claimed v disagrees with the group order");
    if (j.contains("provenance")) doc.provenance = j.at("provenance");
    if (j.contains("verification")) doc.verification = j.at("verification");
    if (j.contains("classes"))
        doc.classes = j.at("classes").get<std::vector<std::vector<std::size_t>>>();
    return doc;
}

}  // namespace diffam
