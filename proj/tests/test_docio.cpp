#include <catch2/catch_amalgamated.hpp>

#include "diffam/catalog.hpp"
#include "diffam/construct.hpp"
#include "diffam/design_io.hpp"

using namespace diffam;

TEST_CASE("group descriptors round trip") {
    for (const auto& g : {cyclic_group(63), make_group(GroupKind::product, {11, 13}),
                          make_group(GroupKind::field_additive, {13})}) {
        const auto j = group_to_json(g);
        const auto back = group_from_json(j);
        CHECK(back.kind == g.kind);
        CHECK(back.moduli == g.moduli);
        CHECK(back.order == g.order);
    }
    CHECK(group_to_json(cyclic_group(63)) == json({{"kind", "cyclic"}, {"order", 63}}));
    CHECK(group_to_json(make_group(GroupKind::field_additive, {13})) ==
          json({{"kind", "field_additive"}, {"p", 13}, {"m", 1}}));
}

TEST_CASE("field descriptor uses constant-first coefficients") {
    const auto f = build_field(2, 6);
    const auto j = field_to_json(f);
    CHECK(j["p"] == 2);
    CHECK(j["m"] == 6);
    CHECK(j["modulus"] == json::array({1, 1, 0, 0, 0, 0, 1}));  // x^6 + x + 1
}

TEST_CASE("documents round trip and verification reports are identical") {
    const auto ds = paley_qr_ds(11);
    const auto fam = c2_half_family(ds, skew_halving(ds));
    const auto in_memory = verify_difference_family(fam.group, fam.blocks, fam.gamma);

    auto doc = document_from_family(fam, json{{"method", "c2"}});
    const auto text = document_to_json(doc).dump();
    const auto parsed = document_from_json(json::parse(text));
    CHECK(parsed.v == fam.v);
    CHECK(parsed.K == fam.K);
    CHECK(parsed.gamma == fam.gamma);
    CHECK(parsed.u == fam.u);
    CHECK(parsed.blocks == fam.blocks);

    const auto reparsed = verify_difference_family(parsed.group, parsed.blocks, parsed.gamma);
    CHECK(report_to_json(reparsed) == report_to_json(in_memory));
}

TEST_CASE("documents with out-of-range codes or bad versions are rejected") {
    const auto ds = paley_qr_ds(11);
    auto doc = document_from_family(c1_intersection_family(ds), json::object());
    auto j = document_to_json(doc);

    auto bad_code = j;
    bad_code["blocks"][0][0] = 11;  // v = 11, codes must stay below it
    CHECK_THROWS_AS(document_from_json(bad_code), std::invalid_argument);

    auto bad_version = j;
    bad_version["schema_version"] = 2;
    CHECK_THROWS_AS(document_from_json(bad_version), std::invalid_argument);

    auto bad_v = j;
    bad_v["claimed"]["v"] = 12;
    CHECK_THROWS_AS(document_from_json(bad_v), std::invalid_argument);
}

TEST_CASE("report serialization shape") {
    const auto rep = verify_difference_family(cyclic_group(11),
                                              {{4, 5}, {1, 4}, {5, 9}, {3, 9}, {1, 3}});
    const auto j = report_to_json(rep);
    CHECK(j["kind"] == "df");
    CHECK(j["pass"] == true);
    CHECK(j["gamma"] == 1);
    CHECK(j["histogram"] == json({{"1", 10}}));
    CHECK(j["offenders"] == json::array());
}

TEST_CASE("nrb documents carry their classes") {
    const auto ddf = cyclotomic_ddf(7, 2);
    const auto dev = nrb_development(ddf);
    DesignDocument doc;
    doc.group = ddf.group;
    doc.blocks = dev.blocks;
    doc.v = ddf.v;
    doc.K = block_size_set(dev.blocks);
    doc.gamma = ddf.lambda;
    doc.u = static_cast<i64>(dev.blocks.size());
    doc.classes = dev.classes;
    const auto text = document_to_json(doc).dump();
    const auto parsed = document_from_json(json::parse(text));
    REQUIRE(parsed.classes.has_value());
    const auto rep = verify_nrb(parsed.group.order, parsed.blocks, *parsed.classes);
    CHECK(rep.pass);
}
