// Command-line front end for the ssd4 shared library. Talks to the C API
// only; output is aligned text by default or a JSON document with --json.
//
// Exit codes: 0 success, 1 domain error (error code on stderr / in the JSON
// document), 2 parse or usage error (with input position where available).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "ssd4/ssd4.h"

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string field = "gf2";
    unsigned precision = 64;
    bool auto_extend = false;
    bool json = false;
};

struct CliError {
    int exit_code;
    std::string code;
    std::string message;
    long position;
};

[[noreturn]] void throw_status(ssd4_status st) {
    throw CliError{st == SSD4_ERR_PARSE ? 2 : 1, ssd4_status_name(st), ssd4_last_error(),
                   ssd4_last_error_position()};
}

void check(ssd4_status st) {
    if (st != SSD4_OK) throw_status(st);
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    ssd4_string_free(s);
    return out;
}

unsigned parse_field_name(const std::string& name) {
    if (name == "gf2") return 1;
    if (name.rfind("gf2_", 0) == 0) {
        try {
            return static_cast<unsigned>(std::stoul(name.substr(4)));
        } catch (...) {
        }
    }
    throw CliError{2, "ParseError", "bad field name '" + name + "' (use gf2 or gf2_<n>)", -1};
}

using FieldPtr = std::unique_ptr<ssd4_field, decltype(&ssd4_field_free)>;
using PolyPtr = std::unique_ptr<ssd4_poly, decltype(&ssd4_poly_free)>;
using ClassPtr = std::unique_ptr<ssd4_class, decltype(&ssd4_class_free)>;
using DescPtr = std::unique_ptr<ssd4_desc, decltype(&ssd4_desc_free)>;
using CertPtr = std::unique_ptr<ssd4_cert, decltype(&ssd4_cert_free)>;

FieldPtr open_field(const Options& opt) {
    ssd4_field* f = nullptr;
    check(ssd4_field_new(parse_field_name(opt.field), opt.auto_extend ? 1 : 0, &f));
    return FieldPtr(f, &ssd4_field_free);
}

ClassPtr reduce_expr(const Options& opt, const ssd4_field* field, const std::string& expr) {
    ssd4_poly* poly = nullptr;
    check(ssd4_poly_parse(field, expr.c_str(), &poly));
    PolyPtr p(poly, &ssd4_poly_free);
    ssd4_class* cls = nullptr;
    check(ssd4_class_reduce(p.get(), &cls));
    (void)opt;
    return ClassPtr(cls, &ssd4_class_free);
}

void emit(const Options& opt, const Json& doc) {
    if (opt.json) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        std::cout << key;
        for (size_t i = key.size(); i < 18; ++i) std::cout << ' ';
        std::cout << text << "\n";
    }
}

std::string field_label(const Options& opt, const ssd4_field* f) {
    char* mod = nullptr;
    check(ssd4_field_modulus(f, &mod));
    return opt.field + " (" + take_string(mod) + ")";
}

int cmd_reduce(const Options& opt, const std::string& expr) {
    FieldPtr field = open_field(opt);
    ClassPtr cls = reduce_expr(opt, field.get(), expr);
    char* text = nullptr;
    check(ssd4_class_to_string(cls.get(), &text));
    long pole = 0;
    check(ssd4_class_pole_order(cls.get(), &pole));
    int zero = 0;
    check(ssd4_class_is_zero(cls.get(), &zero));
    Json doc;
    doc["command"] = "reduce";
    doc["field"] = field_label(opt, field.get());
    doc["input"] = expr;
    doc["representative"] = take_string(text);
    doc["zero_class"] = zero != 0;
    doc["pole_order"] = pole;
    emit(opt, doc);
    return 0;
}

int cmd_different(const Options& opt, const std::string& expr) {
    FieldPtr field = open_field(opt);
    ClassPtr cls = reduce_expr(opt, field.get(), expr);
    char* text = nullptr;
    check(ssd4_class_to_string(cls.get(), &text));
    long diff = 0;
    check(ssd4_class_different_degree(cls.get(), &diff));
    Json doc;
    doc["command"] = "different";
    doc["field"] = field_label(opt, field.get());
    doc["representative"] = take_string(text);
    doc["different_degree"] = diff;
    emit(opt, doc);
    return 0;
}

int cmd_genus(const Options& opt, const std::string& expr) {
    FieldPtr field = open_field(opt);
    ClassPtr cls = reduce_expr(opt, field.get(), expr);
    char* text = nullptr;
    check(ssd4_class_to_string(cls.get(), &text));
    long genus = 0;
    check(ssd4_class_genus(cls.get(), &genus));
    Json doc;
    doc["command"] = "genus";
    doc["field"] = field_label(opt, field.get());
    doc["representative"] = take_string(text);
    doc["genus"] = genus;
    emit(opt, doc);
    return 0;
}

int cmd_galois_test(const Options& opt, const std::string& expr) {
    FieldPtr field = open_field(opt);
    ClassPtr cls = reduce_expr(opt, field.get(), expr);
    char* text = nullptr;
    check(ssd4_class_to_string(cls.get(), &text));
    ssd4_galois_kind kind = SSD4_CLASS_TRIVIAL;
    check(ssd4_class_galois_test(cls.get(), &kind));
    Json doc;
    doc["command"] = "galois-test";
    doc["field"] = field_label(opt, field.get());
    doc["representative"] = take_string(text);
    doc["result"] = kind == SSD4_CLASS_TRIVIAL   ? "trivial"
                    : kind == SSD4_CLASS_GALOIS ? "galois"
                                                : "non-galois (dihedral closure)";
    if (kind == SSD4_CLASS_NON_GALOIS) {
        int ss = 0;
        check(ssd4_class_is_supersimple(cls.get(), &ss));
        doc["supersimple"] = ss != 0;
    }
    emit(opt, doc);
    return 0;
}

Json describe(const DescPtr& desc) {
    char* eta = nullptr;
    char* q = nullptr;
    check(ssd4_desc_eta(desc.get(), &eta));
    check(ssd4_desc_q(desc.get(), &q));
    long degree = 0, diff = 0;
    check(ssd4_desc_degree(desc.get(), &degree));
    check(ssd4_desc_different_degree(desc.get(), &diff));
    int corrected = 0, extended = 0;
    unsigned n = 0;
    check(ssd4_desc_used_correction(desc.get(), &corrected));
    check(ssd4_desc_field_extended(desc.get(), &extended));
    check(ssd4_desc_field_degree(desc.get(), &n));
    Json doc;
    doc["eta"] = take_string(eta);
    doc["q"] = take_string(q);
    doc["degree"] = degree;
    doc["different_degree"] = diff;
    doc["branch"] = corrected ? "eta+1" : "eta";
    doc["field_extended"] = extended != 0;
    doc["field_degree"] = n;
    return doc;
}

int cmd_classify(const Options& opt, const std::string& expr) {
    FieldPtr field = open_field(opt);
    ClassPtr cls = reduce_expr(opt, field.get(), expr);
    ssd4_desc* desc_raw = nullptr;
    check(ssd4_classify(cls.get(), &desc_raw));
    DescPtr desc(desc_raw, &ssd4_desc_free);
    Json doc;
    doc["command"] = "classify";
    doc["field"] = field_label(opt, field.get());
    for (auto& [k, v] : describe(desc).items()) doc[k] = v;
    emit(opt, doc);
    return 0;
}

int cmd_lift(const Options& opt, const std::string& expr, const std::string& out_path) {
    FieldPtr field = open_field(opt);
    ClassPtr cls = reduce_expr(opt, field.get(), expr);
    ssd4_desc* desc_raw = nullptr;
    check(ssd4_classify(cls.get(), &desc_raw));
    DescPtr desc(desc_raw, &ssd4_desc_free);
    ssd4_cert* cert_raw = nullptr;
    check(ssd4_lift(desc.get(), opt.precision, &cert_raw));
    CertPtr cert(cert_raw, &ssd4_cert_free);

    char* json_text = nullptr;
    check(ssd4_cert_to_json(cert.get(), &json_text));
    std::string cert_json = take_string(json_text);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw CliError{1, "IoError", "cannot write " + out_path, -1};
        out << cert_json;
    }

    if (opt.json) {
        // The result document is the certificate itself.
        std::cout << cert_json;
        return 0;
    }
    long g2 = 0, g3 = 0;
    check(ssd4_cert_genus(cert.get(), &g2, &g3));
    Json doc;
    doc["command"] = "lift";
    doc["field"] = field_label(opt, field.get());
    for (auto& [k, v] : describe(desc).items()) doc[k] = v;
    Json cert_doc = Json::parse(cert_json);
    doc["case"] = cert_doc["case"];
    doc["precision"] = opt.precision;
    for (const char* flag : {"identity_verified", "h_division_exact", "g_reduces_to_one",
                             "reduction_matches", "non_galois_witness_unit", "genus_consistent"}) {
        int value = 0;
        check(ssd4_cert_flag(cert.get(), flag, &value));
        doc[flag] = value != 0;
    }
    doc["g2"] = g2;
    doc["g3"] = g3;
    if (!out_path.empty()) doc["certificate"] = out_path;
    emit(opt, doc);
    return 0;
}

int cmd_verify_identity(const Options& opt, int m, bool small, bool all) {
    std::vector<int> ms;
    if (all) {
        ms = {0, 1, 2, 3, 4};
    } else if (small) {
        ms = {0};
    } else {
        ms = {m};
    }
    Json reports = Json::array();
    bool ok = true;
    for (int mi : ms) {
        char* rep = nullptr;
        check(ssd4_verify_identity(mi, &rep));
        Json j = Json::parse(take_string(rep));
        ok = ok && j["holds"].get<bool>();
        reports.push_back(j);
    }
    if (opt.json) {
        Json doc;
        doc["command"] = "verify-identity";
        doc["reports"] = reports;
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& j : reports) {
            std::string label = j["identity"] == "small"
                                    ? "lemma (small case, deg Q' <= 1)"
                                    : "lemma (general case, m = " + j["m"].dump() + ")";
            std::cout << label << ": "
                      << (j["holds"].get<bool>() ? "identity holds (symbolic, residual = 0)"
                                                 : "IDENTITY FAILED, residual = " +
                                                       j["residual"].get<std::string>())
                      << "\n";
        }
    }
    return ok ? 0 : 1;
}

int cmd_verify_cert(const Options& opt, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{1, "IoError", "cannot read " + path, -1};
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ssd4_cert* cert_raw = nullptr;
    check(ssd4_cert_from_json(text.c_str(), &cert_raw));
    CertPtr cert(cert_raw, &ssd4_cert_free);
    int all_ok = 0;
    char* report = nullptr;
    check(ssd4_cert_verify(cert.get(), &all_ok, &report));
    std::string report_json = take_string(report);
    if (opt.json) {
        std::cout << report_json;
    } else {
        Json j = Json::parse(report_json);
        for (const auto& line : j["checks"]) {
            std::cout << (line["ok"].get<bool>() ? "PASS  " : "FAIL  ")
                      << line["name"].get<std::string>();
            if (!line["ok"].get<bool>()) std::cout << "  (" << line["detail"].get<std::string>() << ")";
            std::cout << "\n";
        }
        std::cout << (all_ok ? "certificate verified" : "certificate verification FAILED") << "\n";
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ssd4: supersimple dihedral covers in characteristic 2 and their 2-adic lifts"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--field", opt.field, "coefficient field: gf2 or gf2_<n>, n in {2,3,4,8,16,32}")
        ->capture_default_str();
    app.add_option("--precision", opt.precision, "2-adic working precision in bits (8..64)")
        ->capture_default_str();
    app.add_flag("--auto-extend", opt.auto_extend,
                 "allow operations to pass to GF(2^{2n}) on trace obstructions");
    app.add_flag("--json", opt.json, "emit JSON instead of aligned text");

    std::string expr, out_path, cert_path;
    int m = 1;
    bool small = false;

    auto* reduce = app.add_subcommand("reduce", "canonical Artin-Schreier class representative");
    reduce->add_option("expr", expr, "polynomial expression")->required();
    auto* classify = app.add_subcommand("classify", "classify a supersimple class as (eta, Q)");
    classify->add_option("expr", expr, "polynomial expression")->required();
    auto* different = app.add_subcommand("different", "degree of different of the class");
    different->add_option("expr", expr, "polynomial expression")->required();
    auto* genus = app.add_subcommand("genus", "genus of the one-point compactification");
    genus->add_option("expr", expr, "polynomial expression")->required();
    auto* galois = app.add_subcommand("galois-test", "trivial / Galois / dihedral trichotomy");
    galois->add_option("expr", expr, "polynomial expression")->required();
    auto* lift = app.add_subcommand("lift", "construct and check a characteristic-0 lift");
    lift->add_option("expr", expr, "polynomial expression")->required();
    lift->add_option("-o,--output", out_path, "write the certificate JSON to this file");
    auto* vid = app.add_subcommand("verify-identity", "symbolic verification of the lift identities");
    auto* m_opt = vid->add_option("--m", m, "verify the general identity for this m (>= 1)");
    auto* small_opt = vid->add_flag("--small", small, "verify the small identity (deg Q' <= 1)");
    auto* vcert = app.add_subcommand("verify-cert", "re-run all checks of a stored certificate");
    vcert->add_option("path", cert_path, "certificate JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(opt, expr);
        if (classify->parsed()) return cmd_classify(opt, expr);
        if (different->parsed()) return cmd_different(opt, expr);
        if (genus->parsed()) return cmd_genus(opt, expr);
        if (galois->parsed()) return cmd_galois_test(opt, expr);
        if (lift->parsed()) return cmd_lift(opt, expr, out_path);
        if (vid->parsed())
            return cmd_verify_identity(opt, m, small,
                                       m_opt->count() == 0 && small_opt->count() == 0);
        if (vcert->parsed()) return cmd_verify_cert(opt, cert_path);
    } catch (const CliError& e) {
        if (opt.json) {
            Json err;
            err["error"] = Json{{"code", e.code}, {"message", e.message}};
            if (e.position >= 0) err["error"]["position"] = e.position;
            std::cout << err.dump(2) << "\n";
        } else {
            std::cerr << "error: " << e.code << ": " << e.message;
            if (e.position >= 0) std::cerr << " (position " << e.position << ")";
            std::cerr << "\n";
        }
        return e.exit_code;
    }
    return 2;
}
