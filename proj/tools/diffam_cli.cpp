// diffam: construct, verify and analyze difference families.
//
// Subcommands
//   construct  build a family via one of the six constructions, emit a
//              design document (JSON) on stdout or --out
//   verify     check a design document against a named property
//   intersect  intersection-number profiles (closed form vs direct count)
//              and the ell = 2/3/4 solvers
//   solve      diophantine helpers (norm-form, two-squares)
//   catalog    list the built-in parameter families
//
// Exit codes: 0 success/pass, 1 mathematical failure or rejection,
// 2 usage or input error.  Every command is deterministic given its flags.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffam/catalog.hpp"
#include "diffam/construct.hpp"
#include "diffam/design_io.hpp"
#include "diffam/intersect.hpp"

namespace {

using diffam::i64;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitUsage = 2;

struct DsFlags {
    std::string name;
    i64 q = 0;
    int m = 0;
    bool with_zero = false;
    std::string in_file;
};

diffam::DifferenceSet load_ds(const DsFlags& f) {
    if (!f.in_file.empty()) {
        std::ifstream in(f.in_file);
        if (!in) throw std::invalid_argument("cannot open input document: " + f.in_file);
        json j;
        in >> j;
        auto doc = diffam::document_from_json(j);
        if (doc.blocks.size() != 1)
            throw std::invalid_argument("input document must carry exactly one block to act as a difference set");
        diffam::DifferenceSet ds;
        ds.group = doc.group;
        ds.elements = doc.blocks.front();
        std::sort(ds.elements.begin(), ds.elements.end());
        ds.v = doc.group.order;
        ds.k = static_cast<i64>(ds.elements.size());
        auto rep = diffam::verify_difference_set(ds.group, ds.elements);
        if (!rep.pass) throw std::invalid_argument("input block is not a difference set");
        ds.lambda = rep.computed.at("lambda");
        return ds;
    }
    if (f.name == "singer") return diffam::singer_ds(f.q, f.m);
    // residue-class families are kept to prime q on the command line; the
    // library itself also accepts prime powers through the field module
    const auto require_prime = [&] {
        if (!diffam::is_prime(f.q))
            throw std::invalid_argument("--ds " + f.name + " takes a prime q on the command line");
    };
    if (f.name == "paley") { require_prime(); return diffam::paley_qr_ds(f.q); }
    if (f.name == "qrzero") { require_prime(); return diffam::qr_complement_zero_ds(f.q); }
    if (f.name == "biquadratic") { require_prime(); return diffam::biquadratic_ds(f.q, f.with_zero); }
    if (f.name == "octic") { require_prime(); return diffam::octic_ds(f.q, f.with_zero); }
    if (f.name == "twinprime") return diffam::twin_prime_ds(f.q);
    throw std::invalid_argument("unknown --ds family: " + f.name);
}

void emit_document(const diffam::DesignDocument& doc, const std::string& out_file) {
    const std::string text = diffam::document_to_json(doc).dump(2);
    if (out_file.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_file);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_file);
        out << text << "\n";
    }
}

std::vector<i64> parse_pattern(const std::string& s) {
    std::vector<i64> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoll(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

json profile_json(const std::string& source, const std::vector<i64>& ks) {
    return json{{"source", source}, {"ks", ks}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"difference family construction and certification"};
    app.require_subcommand(1);

    // ---- construct ----
    auto* cmd_construct = app.add_subcommand("construct", "build a difference family");
    std::string method;
    DsFlags src;
    std::string out_file, halving = "canonical", pattern;
    i64 s_flag = 1, ell_flag = 0, ddf_e = 0;
    i64 budget = diffam::kDefaultBudget;
    bool drop_trivial = false, search_delta = false;
    cmd_construct->add_option("--method", method, "c1|c2|c3plus|c3minus|c4|c5|c6")->required();
    cmd_construct->add_option("--ds", src.name, "source difference set family");
    cmd_construct->add_option("--q", src.q, "family parameter q");
    cmd_construct->add_option("--m", src.m, "singer extension degree m");
    cmd_construct->add_flag("--with-zero", src.with_zero, "include zero (biquadratic/octic)");
    cmd_construct->add_option("--in", src.in_file, "input design document acting as the source set");
    cmd_construct->add_option("--halving", halving, "c2 split: canonical|skew");
    cmd_construct->add_option("--s", s_flag, "subset size for c3/c5");
    cmd_construct->add_option("--ell", ell_flag, "subgroup index for c4");
    cmd_construct->add_option("--pattern", pattern, "c4 sub-moduli pattern, comma separated");
    cmd_construct->add_flag("--drop-trivial", drop_trivial, "c4: drop size<=1 and full blocks");
    cmd_construct->add_option("--e", ddf_e, "c5: cyclotomic DDF class count e");
    cmd_construct->add_flag("--search-delta", search_delta, "c6: search the delta assignments");
    cmd_construct->add_option("--budget", budget, "enumeration budget");
    cmd_construct->add_option("--out", out_file, "write the document to a file");

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "verify a design document");
    std::string verify_file, verify_kind = "df";
    bool ignore_claims = false;
    cmd_verify->add_option("file", verify_file, "design document")->required();
    cmd_verify->add_option("--kind", verify_kind, "df|ds|ads|ddf|bibd|nrb");
    cmd_verify->add_flag("--measured-only", ignore_claims,
                         "report measured values without checking the claimed gamma");

    // ---- intersect ----
    auto* cmd_intersect = app.add_subcommand("intersect", "intersection-number profiles");
    std::string is_ds, is_split, is_solver, is_format = "json";
    i64 is_q = 0, is_ell = 0, is_k = 0, is_lambda = 0, is_v = 0, is_u = 0;
    int is_m = 0;
    cmd_intersect->add_option("--ds", is_ds, "singer|twinprime");
    cmd_intersect->add_option("--q", is_q, "q");
    cmd_intersect->add_option("--m", is_m, "singer m");
    cmd_intersect->add_option("--ell", is_ell, "subgroup index");
    cmd_intersect->add_option("--split", is_split, "twinprime split 'ell,n'");
    cmd_intersect->add_option("--solver", is_solver, "l2|l3|l4|bounds");
    cmd_intersect->add_option("--k", is_k, "k");
    cmd_intersect->add_option("--lambda", is_lambda, "lambda");
    cmd_intersect->add_option("--v", is_v, "v");
    cmd_intersect->add_option("--u", is_u, "l4 Hadamard u");
    cmd_intersect->add_option("--format", is_format, "json|csv");

    // ---- solve ----
    auto* cmd_solve = app.add_subcommand("solve", "diophantine helpers");
    std::string solve_what;
    i64 solve_a = 0;
    cmd_solve->add_option("problem", solve_what, "norm-form|two-squares")->required();
    cmd_solve->add_option("value", solve_a, "target value")->required();

    // ---- catalog ----
    auto* cmd_catalog = app.add_subcommand("catalog", "built-in families");
    std::string catalog_action = "list", catalog_format = "json";
    cmd_catalog->add_option("action", catalog_action, "list");
    cmd_catalog->add_option("--format", catalog_format, "json|csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*cmd_construct) {
            json prov{{"method", method}};
            if (!src.name.empty()) {
                prov["inputs"] = {{"ds", src.name}, {"q", src.q}};
                if (src.m) prov["inputs"]["m"] = src.m;
                if (src.with_zero) prov["inputs"]["with_zero"] = true;
            } else if (!src.in_file.empty()) {
                prov["inputs"] = {{"in", src.in_file}};
            }
            diffam::DesignFamily fam;
            if (method == "c5") {
                if (ddf_e < 2) throw std::invalid_argument("c5 requires --e");
                if (!diffam::is_prime(src.q))
                    throw std::invalid_argument("c5 takes a prime q on the command line");
                auto ddf = diffam::cyclotomic_ddf(src.q, ddf_e);
                fam = diffam::c5_nrb_union(ddf, s_flag, budget);
                prov["inputs"] = {{"ddf", "cyclotomic"}, {"q", src.q}, {"e", ddf_e}, {"s", s_flag}};
            } else if (method == "c6") {
                auto ads = diffam::qr_ads(src.q);
                prov["inputs"] = {{"ads", "qr"}, {"q", src.q}};
                if (search_delta) {
                    auto found = diffam::c6_search_delta(ads, budget);
                    if (!found) {
                        json rej{{"rejected", true},
                                 {"reason", "no delta assignment satisfies the condition"}};
                        std::cout << rej.dump(2) << "\n";
                        return kExitMathFail;
                    }
                    fam = std::move(found->second);
                    prov["inputs"]["search_delta"] = true;
                } else {
                    auto outcome = diffam::c6_ads_family(diffam::ads_profile_constant(ads, 0));
                    if (!outcome.accepted) {
                        json rej{{"rejected", true},
                                 {"failing_t", outcome.rejection.failing_t},
                                 {"measured", outcome.rejection.measured},
                                 {"required", outcome.rejection.required}};
                        std::cout << rej.dump(2) << "\n";
                        return kExitMathFail;
                    }
                    fam = std::move(outcome.family);
                    prov["inputs"]["delta"] = 0;
                }
            } else {
                auto ds = load_ds(src);
                if (method == "c1") {
                    fam = diffam::c1_intersection_family(ds);
                } else if (method == "c2") {
                    const auto h = (halving == "skew") ? diffam::skew_halving(ds)
                                                       : diffam::canonical_halving(ds.group);
                    fam = diffam::c2_half_family(ds, h);
                    prov["inputs"]["halving"] = halving;
                } else if (method == "c3plus") {
                    fam = diffam::c3_augment(ds, s_flag, budget);
                    prov["inputs"]["s"] = s_flag;
                    const auto formula = diffam::c3_augment_gamma_formula(ds, s_flag);
                    prov["gamma_formula"] = formula;
                } else if (method == "c3minus") {
                    fam = diffam::c3_reduce(ds, s_flag, budget);
                    prov["inputs"]["s"] = s_flag;
                    const auto [thm, cor] = diffam::c3_reduce_gamma_formulas(ds, s_flag);
                    prov["gamma_formula_theorem"] = thm;
                    prov["gamma_formula_corollary"] = cor;
                } else if (method == "c4") {
                    diffam::SubgroupSpec spec;
                    if (!pattern.empty()) {
                        spec.indices = parse_pattern(pattern);
                    } else if (ell_flag > 0) {
                        if (ds.group.moduli.size() == 1) {
                            if (ds.v % ell_flag != 0)
                                throw std::invalid_argument("c4: ell must divide v");
                            spec = diffam::cyclic_subgroup_index(ell_flag);
                        } else if (ds.group.moduli.size() == 2 && ell_flag == ds.group.moduli[0]) {
                            spec.indices = {ell_flag, 1};
                        } else if (ds.group.moduli.size() == 2 && ell_flag == ds.group.moduli[1]) {
                            spec.indices = {1, ell_flag};
                        } else {
                            throw std::invalid_argument("c4: --ell does not match a factor; use --pattern");
                        }
                    } else {
                        throw std::invalid_argument("c4 requires --ell or --pattern");
                    }
                    fam = diffam::c4_subgroup_partition(ds, spec, drop_trivial);
                    prov["inputs"]["ell"] = ell_flag;
                    if (drop_trivial) prov["inputs"]["drop_trivial"] = true;
                } else {
                    throw std::invalid_argument("unknown --method: " + method);
                }
            }
            auto doc = diffam::document_from_family(fam, prov);
            doc.verification = diffam::report_to_json(
                diffam::verify_difference_family(fam.group, fam.blocks, fam.gamma));
            emit_document(doc, out_file);
            return kExitPass;
        }

        if (*cmd_verify) {
            std::ifstream in(verify_file);
            if (!in) throw std::invalid_argument("cannot open document: " + verify_file);
            json j;
            in >> j;
            auto doc = diffam::document_from_json(j);
            diffam::VerificationReport rep;
            if (verify_kind == "df") {
                rep = ignore_claims
                          ? diffam::verify_difference_family(doc.group, doc.blocks)
                          : diffam::verify_difference_family(doc.group, doc.blocks, doc.gamma);
            } else if (verify_kind == "ds") {
                if (doc.blocks.size() != 1)
                    throw std::invalid_argument("ds verification expects exactly one block");
                rep = diffam::verify_difference_set(doc.group, doc.blocks.front());
            } else if (verify_kind == "ads") {
                if (doc.blocks.size() != 1)
                    throw std::invalid_argument("ads verification expects exactly one block");
                rep = diffam::verify_ads(doc.group, doc.blocks.front());
            } else if (verify_kind == "ddf") {
                rep = diffam::verify_ddf(doc.group, doc.blocks);
            } else if (verify_kind == "bibd") {
                rep = diffam::verify_bibd(doc.group.order, doc.blocks);
            } else if (verify_kind == "nrb") {
                if (!doc.classes)
                    throw std::invalid_argument("nrb verification needs a 'classes' field");
                rep = diffam::verify_nrb(doc.group.order, doc.blocks, *doc.classes);
            } else {
                throw std::invalid_argument("unknown --kind: " + verify_kind);
            }
            std::cout << diffam::report_to_json(rep).dump(2) << "\n";
            return rep.pass ? kExitPass : kExitMathFail;
        }

        if (*cmd_intersect) {
            json out;
            std::vector<json> rows;
            if (is_ds == "singer") {
                auto ki = diffam::singer_ki(is_q, is_m, is_ell);
                out["ell"] = ki.ell;
                out["n"] = ki.n;
                out["semiprimitive"] = ki.semiprimitive;
                if (ki.closed_form) out["closed_form"] = *ki.closed_form;
                out["direct_count"] = ki.direct_count;
                if (ki.closed_form) rows.push_back(profile_json("closed_form", *ki.closed_form));
                rows.push_back(profile_json("direct_count", ki.direct_count));
            } else if (is_ds == "twinprime") {
                auto parts = parse_pattern(is_split);
                if (parts.size() != 2) throw std::invalid_argument("twinprime needs --split ell,n");
                auto ki = diffam::twin_ki(is_q, parts[0], parts[1]);
                out["ell"] = ki.ell;
                out["n"] = ki.n;
                out["closed_form"] = ki.closed_form;
                out["direct_count"] = ki.direct_count;
                rows.push_back(profile_json("closed_form", ki.closed_form));
                rows.push_back(profile_json("direct_count", ki.direct_count));
            } else if (is_solver == "l2") {
                auto r = diffam::solve_l2(is_k, is_lambda);
                out["solvable"] = r.solvable;
                out["profiles"] = json::array();
                for (const auto& p : r.profiles) {
                    out["profiles"].push_back(profile_json("closed_form", {p[0], p[1]}));
                    rows.push_back(profile_json("closed_form", {p[0], p[1]}));
                }
            } else if (is_solver == "l3") {
                if (is_v % 3 != 0) throw std::invalid_argument("l3 requires 3 | v");
                auto ps = diffam::solve_l3(is_v, is_k, is_lambda, is_v / 3);
                out["profiles"] = json::array();
                for (const auto& p : ps) {
                    out["profiles"].push_back(profile_json("enumerated", {p[0], p[1], p[2]}));
                    rows.push_back(profile_json("enumerated", {p[0], p[1], p[2]}));
                }
            } else if (is_solver == "l4") {
                auto r = diffam::solve_l4_hadamard(is_u);
                out["profiles"] = json::array();
                for (const auto& p : r.profiles) {
                    out["profiles"].push_back(profile_json("enumerated", {p[0], p[1], p[2], p[3]}));
                    rows.push_back(profile_json("enumerated", {p[0], p[1], p[2], p[3]}));
                }
                if (r.closed_form) {
                    const auto& p = *r.closed_form;
                    out["closed_form"] = profile_json("closed_form", {p[0], p[1], p[2], p[3]});
                    out["closed_form_agrees"] = r.closed_form_agrees;
                }
            } else if (is_solver == "bounds") {
                auto b = diffam::k_bounds(is_v, is_k, is_lambda, is_ell);
                out["center"] = std::to_string(b.center.num) + "/" + std::to_string(b.center.den);
                out["radicand"] =
                    std::to_string(b.radicand.num) + "/" + std::to_string(b.radicand.den);
                out["lo_approx"] = b.lo_approx();
                out["hi_approx"] = b.hi_approx();
            } else {
                throw std::invalid_argument("intersect needs --ds singer|twinprime or --solver l2|l3|l4|bounds");
            }
            if (is_format == "csv") {
                for (const auto& row : rows) {
                    std::cout << row["source"].get<std::string>();
                    for (const auto& k : row["ks"]) std::cout << "," << k.get<i64>();
                    std::cout << "\n";
                }
            } else {
                std::cout << out.dump(2) << "\n";
            }
            return kExitPass;
        }

        if (*cmd_solve) {
            if (solve_what == "norm-form") {
                auto r = diffam::norm_form_solve(solve_a);
                json out{{"solvable", r.solvable}, {"pairs", r.pairs}};
                std::cout << out.dump() << "\n";
            } else if (solve_what == "two-squares") {
                auto r = diffam::two_squares(solve_a);
                std::cout << json(r.pairs).dump() << "\n";
            } else {
                throw std::invalid_argument("unknown solve problem: " + solve_what);
            }
            return kExitPass;
        }

        if (*cmd_catalog) {
            if (catalog_action != "list")
                throw std::invalid_argument("unknown catalog action: " + catalog_action);
            const auto families = diffam::catalog_families();
            if (catalog_format == "csv") {
                for (const auto& f : families)
                    std::cout << f.name << ";" << f.parameters << ";" << f.precondition << "\n";
            } else {
                json out = json::array();
                for (const auto& f : families)
                    out.push_back({{"name", f.name},
                                   {"parameters", f.parameters},
                                   {"precondition", f.precondition}});
                std::cout << out.dump(2) << "\n";
            }
            return kExitPass;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return kExitMathFail;
    }
    return kExitUsage;
}
