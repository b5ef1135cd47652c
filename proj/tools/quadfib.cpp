// Command-line driver. Talks to the library only through quadfib.h.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadfib/quadfib.h"

using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kIo = 1, kValidation = 2, kIdentity = 3, kCeiling = 4 };

struct Failure {
    int code;
    std::string message;
};

int exit_for(int status) {
    switch (status) {
        case QF_OK: return kOk;
        case QF_E_INVALID:
        case QF_E_BUFFER: return kValidation;
        case QF_E_CEILING: return kCeiling;
        case QF_E_CONSISTENCY: return kIdentity;
    }
    return kIo;
}

void check(int status, const char* what) {
    if (status == QF_OK) return;
    std::string msg = std::string(what) + ": " + qf_status_string(status);
    if (*qf_last_error()) msg += " (" + std::string(qf_last_error()) + ")";
    throw Failure{exit_for(status), msg};
}

using Context = std::unique_ptr<qf_context, decltype(&qf_context_destroy)>;

Context make_context(uint64_t need) {
    if (need > 400000000ull) throw Failure{kValidation, "range too large for the sieve"};
    qf_context* ctx = nullptr;
    check(qf_context_create(static_cast<uint32_t>(std::max<uint64_t>(need, 1000000)), &ctx), "context");
    return Context(ctx, qf_context_destroy);
}

// Output goes to stdout unless --out is given.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw Failure{kIo, "cannot open " + path};
        os = &file;
    }
    std::ostream& operator*() { return *os; }
    void finish() {
        os->flush();
        if (!*os) throw Failure{kIo, "write failed"};
    }
};

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<int64_t> parse_list(const std::string& s) {
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Failure{kValidation, "not an integer: '" + item + "'"};
        }
    }
    return out;
}

const char* verdict_name(int v) {
    switch (v) {
        case QF_SOLUBLE: return "soluble";
        case QF_INSOLUBLE: return "insoluble";
    }
    return "unknown";
}

std::string place_name(uint64_t p) { return p == 0 ? "inf" : std::to_string(p); }

int mode_from_string(const std::string& s) {
    if (s == "ones") return QF_COEFF_ONES;
    if (s == "mobius") return QF_COEFF_MOBIUS;
    if (s == "random") return QF_COEFF_RANDOM;
    throw Failure{kValidation, "unknown mode " + s};
}

const char* mode_name(int m) {
    static const char* names[] = {"ones", "mobius", "random"};
    return names[m];
}

struct CountArgs {
    std::vector<uint64_t> b_list;
    unsigned workers = 1;
    uint64_t ceiling = 100000;
    size_t memo = 0;
    bool reference = false;
    std::string format = "csv";
    std::string out;
};

qf_count_options options(const CountArgs& a) { return {a.workers, a.ceiling, a.memo, a.reference ? 1 : 0}; }

int cmd_count(const CountArgs& a) {
    auto ctx = make_context(0);
    auto opts = options(a);
    Sink sink(a.out);
    if (a.format == "csv") *sink << "B,N,N1,N2,raw_count,elapsed_ms\n";
    for (uint64_t B : a.b_list) {
        qf_census_row row;
        check(qf_census(ctx.get(), B, &opts, &row), "count");
        if (a.format == "csv") {
            *sink << row.B << ',' << row.N << ',' << row.N1 << ',' << row.N2 << ',' << row.raw << ','
                  << fmt_double(row.elapsed_ms) << '\n';
        } else {
            *sink << json{{"B", row.B}, {"N", row.N}, {"N1", row.N1}, {"N2", row.N2}, {"raw_count", row.raw},
                          {"elapsed_ms", row.elapsed_ms}}
                         .dump()
                  << '\n';
        }
        sink.finish();
    }
    return kOk;
}

// N(B) log B / (B^2 loglog B) for every B in the list, from one histogram at the largest B.
int cmd_diagnostic(const CountArgs& a) {
    auto ctx = make_context(0);
    auto opts = options(a);
    uint64_t top = 0;
    for (auto B : a.b_list) top = std::max(top, B);
    std::vector<uint64_t> hist(top + 1);
    check(qf_height_histogram(ctx.get(), QF_COUNT_RAW, nullptr, top, &opts, hist.data(), hist.size()), "diagnostic");
    std::vector<uint64_t> prefix(top + 1);
    uint64_t run = 0;
    for (uint64_t h = 0; h <= top; ++h) prefix[h] = run += hist[h];

    Sink sink(a.out);
    if (a.format == "csv") *sink << "B,N,ratio\n";
    for (uint64_t B : a.b_list) {
        if (B < 16) throw Failure{kValidation, "diagnostic needs B >= 16 so that loglog B > 1"};
        if (prefix[B] % 4) throw Failure{kIdentity, "raw count not divisible by 4 at B = " + std::to_string(B)};
        const uint64_t N = prefix[B] / 4;
        const double b = static_cast<double>(B);
        const double ratio = static_cast<double>(N) * std::log(b) / (b * b * std::log(std::log(b)));
        if (!std::isfinite(ratio) || ratio <= 0) throw Failure{kIdentity, "non-positive ratio at B = " + std::to_string(B)};
        if (a.format == "csv")
            *sink << B << ',' << N << ',' << fmt_double(ratio) << '\n';
        else
            *sink << json{{"B", B}, {"N", N}, {"ratio", ratio}}.dump() << '\n';
    }
    sink.finish();
    return kOk;
}

int cmd_sigma(const std::string& out) {
    size_t n = 0;
    check(qf_sigma_table(nullptr, 0, &n), "sigma");
    std::vector<qf_sigma_row> rows(n);
    check(qf_sigma_table(rows.data(), rows.size(), &n), "sigma");
    qf_set_counts sets;
    check(qf_mod8_set_counts(&sets), "sets");

    Sink sink(out);
    *sink << "m02,m03,m12,m13,sigma0,sigma1,sigma2,sigma3,S12,S22,S13,S23,status\n";
    size_t failed = 0;
    for (const auto& r : rows) {
        for (auto m : r.m) *sink << m << ',';
        for (auto s : r.sigma) *sink << s << ',';
        for (auto v : r.value) *sink << v << ',';
        *sink << (r.pass ? "PASS" : "FAIL") << '\n';
        failed += !r.pass;
    }
    const bool sets_ok = sets.a1_product_one == 48 && sets.a2_product_one == 32 && sets.component_sums_integral;
    *sink << "# |A1| = " << sets.a1 << ", |A2| = " << sets.a2 << '\n';
    *sink << "# A1 with product 1: " << sets.a1_product_one << '\n';
    *sink << "# A2 with product 1: " << sets.a2_product_one << '\n';
    *sink << "# component sums integral: " << (sets.component_sums_integral ? "yes" : "no") << '\n';
    *sink << "# " << rows.size() << " cases, " << failed << " failed" << (failed || !sets_ok ? "" : ", all PASS") << '\n';
    sink.finish();
    return failed || !sets_ok ? kIdentity : kOk;
}

int cmd_constant(uint64_t prime_limit, const std::string& out) {
    auto ctx = make_context(prime_limit);
    qf_constant_report rep;
    check(qf_leading_constant(ctx.get(), prime_limit, &rep), "constant");
    static const char* keys[] = {"c12", "c13", "c22", "c23"};
    json j{{"prime_limit", prime_limit},
           {"value", rep.closed.value},
           {"tail_radius", rep.closed_radius},
           {"weighted", rep.weighted},
           {"weighted_radius", rep.weighted_radius},
           {"agree", rep.agree != 0}};
    for (int k = 0; k < 4; ++k) j[keys[k]] = rep.cri[k].value;
    Sink sink(out);
    *sink << j.dump() << '\n';
    sink.finish();
    return kOk;
}

int cmd_check(const std::string& literal, const std::string& out) {
    auto a = parse_list(literal);
    if (a.size() != 4) throw Failure{kValidation, "expected four coefficients a0,a1,a2,a3"};
    auto ctx = make_context(0);
    int64_t norm[4];
    check(qf_normalize(ctx.get(), a.data(), norm), "normalize");
    size_t n = 0;
    int els = 0;
    check(qf_check(ctx.get(), a.data(), nullptr, 0, &n, &els), "check");
    std::vector<qf_place_verdict> rows(n);
    check(qf_check(ctx.get(), a.data(), rows.data(), rows.size(), &n, &els), "check");

    Sink sink(out);
    *sink << "# normalized " << norm[0] << ',' << norm[1] << ',' << norm[2] << ',' << norm[3] << '\n';
    *sink << "place,verdict\n";
    for (const auto& r : rows) *sink << place_name(r.place) << ',' << verdict_name(r.verdict) << '\n';
    *sink << "# everywhere locally soluble: " << (els ? "yes" : "no") << '\n';
    sink.finish();
    return kOk;
}

struct BilinearArgs {
    int64_t X = 10000;
    std::vector<int64_t> z_list{10, 100, 1000};
    std::string mode = "all";
    uint64_t seed = 0;
    int64_t ceiling = 100000;
    std::string format = "csv";
    std::string out;
};

int cmd_bilinear(const BilinearArgs& a) {
    if (a.X < 1) throw Failure{kValidation, "X must be positive"};
    auto ctx = make_context(static_cast<uint64_t>(a.X));
    std::vector<int> modes;
    if (a.mode == "all")
        modes = {QF_COEFF_ONES, QF_COEFF_MOBIUS, QF_COEFF_RANDOM};
    else
        modes = {mode_from_string(a.mode)};
    Sink sink(a.out);
    if (a.format == "csv") *sink << "X,z,mode,S,normalized\n";
    for (int64_t z : a.z_list)
        for (int m : modes) {
            int64_t S = 0;
            double norm = 0;
            check(qf_bilinear(ctx.get(), a.X, z, m, a.seed, a.ceiling, &S, &norm), "bilinear");
            if (a.format == "csv")
                *sink << a.X << ',' << z << ',' << mode_name(m) << ',' << S << ',' << fmt_double(norm) << '\n';
            else
                *sink << json{{"X", a.X}, {"z", z}, {"mode", mode_name(m)}, {"S", S}, {"normalized", norm}}.dump()
                      << '\n';
        }
    sink.finish();
    return kOk;
}

int cmd_identity(const std::string& box, unsigned workers, uint64_t random, uint64_t seed, const std::string& out) {
    auto b = parse_list(box);
    if (b.size() != 2) throw Failure{kValidation, "--box takes s_max,m_max"};
    auto ctx = make_context(0);
    qf_identity_report rep;
    check(qf_identity_suite(ctx.get(), b[0], b[1], workers, &rep), "identity");
    Sink sink(out);
    *sink << "box s<=" << b[0] << " m<=" << b[1] << ": checked " << rep.checked << ", mismatches " << rep.mismatches
          << ", " << fmt_double(rep.elapsed_ms) << " ms\n";
    uint64_t bad = rep.mismatches;
    if (random) {
        qf_identity_report r2;
        check(qf_identity_random(ctx.get(), random, 30, seed, &r2), "identity");
        *sink << "random bound 30 seed " << seed << ": checked " << r2.checked << ", mismatches " << r2.mismatches
              << '\n';
        bad += r2.mismatches;
    }
    *sink << (bad ? "FAIL" : "all PASS") << '\n';
    sink.finish();
    return bad ? kIdentity : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting and local solubility tools for diagonal quadric fibrations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qf_version());

    CountArgs ca;
    std::string b_list;
    uint64_t single_b = 0;
    auto add_count_flags = [&](CLI::App* sub) {
        sub->add_option("--b-list", b_list, "comma-separated height bounds");
        sub->add_option("--workers", ca.workers, "worker threads")->check(CLI::Range(1u, 256u));
        sub->add_option("--ceiling", ca.ceiling, "largest accepted B");
        sub->add_option("--memo", ca.memo, "LRU memo entries per worker (0 = off)");
        sub->add_option("--format", ca.format)->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", ca.out, "output path (default stdout)");
    };
    auto* count = app.add_subcommand("count", "census rows N, N1, N2 for each B");
    add_count_flags(count);
    count->add_option("--b", single_b, "single height bound");
    count->add_flag("--reference", ca.reference, "brute-force route");

    auto* diag = app.add_subcommand("diagnostic", "N(B) log B / (B^2 loglog B)");
    add_count_flags(diag);

    std::string out;
    auto* sigma = app.add_subcommand("sigma", "mod-8 character sum table");
    sigma->add_option("--out", out);

    uint64_t prime_limit = 100000;
    auto* constant = app.add_subcommand("constant", "leading constant with tail radius");
    constant->add_option("--prime-limit", prime_limit)->check(CLI::Range(uint64_t{3}, uint64_t{400000000}));
    constant->add_option("--out", out);

    std::string literal;
    auto* chk = app.add_subcommand("check", "place-by-place verdicts for one quadric");
    chk->add_option("coeffs", literal, "a0,a1,a2,a3")->required();
    chk->add_option("--out", out);

    BilinearArgs ba;
    std::string z_list;
    auto* bil = app.add_subcommand("bilinear", "bilinear Jacobi sum sweep");
    bil->add_option("--x", ba.X);
    bil->add_option("--z-list", z_list);
    bil->add_option("--mode", ba.mode)->check(CLI::IsMember({"all", "ones", "mobius", "random"}));
    bil->add_option("--seed", ba.seed);
    bil->add_option("--ceiling", ba.ceiling);
    bil->add_option("--format", ba.format)->check(CLI::IsMember({"csv", "json"}));
    bil->add_option("--out", ba.out);

    std::string box = "15,6";
    unsigned id_workers = 1;
    uint64_t random = 0, seed = 0;
    auto* ident = app.add_subcommand("identity", "indicator vs character sum over a box");
    ident->add_option("--box", box, "s_max,m_max");
    ident->add_option("--workers", id_workers)->check(CLI::Range(1u, 256u));
    ident->add_option("--random", random, "extra random inputs");
    ident->add_option("--seed", seed);
    ident->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        auto to_bounds = [&](const std::string& s) {
            std::vector<uint64_t> v;
            for (auto x : parse_list(s)) {
                if (x < 1) throw Failure{kValidation, "B must be positive"};
                v.push_back(static_cast<uint64_t>(x));
            }
            return v;
        };
        if (count->parsed()) {
            ca.b_list = to_bounds(b_list);
            if (single_b) ca.b_list.push_back(single_b);
            if (ca.b_list.empty()) throw Failure{kValidation, "give --b or --b-list"};
            return cmd_count(ca);
        }
        if (diag->parsed()) {
            ca.b_list = b_list.empty() ? std::vector<uint64_t>{1024, 2048, 4096, 8192, 16384} : to_bounds(b_list);
            return cmd_diagnostic(ca);
        }
        if (sigma->parsed()) return cmd_sigma(out);
        if (constant->parsed()) return cmd_constant(prime_limit, out);
        if (chk->parsed()) return cmd_check(literal, out);
        if (bil->parsed()) {
            if (!z_list.empty()) ba.z_list = parse_list(z_list);
            return cmd_bilinear(ba);
        }
        if (ident->parsed()) return cmd_identity(box, id_workers, random, seed, out);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    return kValidation;
}
