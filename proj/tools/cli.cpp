#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "config.hpp"
#include "psmod1/diophantine.hpp"
#include "psmod1/error.hpp"
#include "psmod1/experiments.hpp"
#include "psmod1/expsum.hpp"
#include "psmod1/fourier.hpp"
#include "psmod1/parallel.hpp"
#include "psmod1/psset.hpp"
#include "psmod1/report.hpp"
#include "psmod1/sieve.hpp"
#include "psmod1/verify.hpp"

namespace psmod1::cli {

namespace {

using nlohmann::json;
using Complex = std::complex<double>;

// keys never echoed into report headers: they do not change the numbers
bool echoed(const std::string& key) { return key != "threads" && key != "out" && key != "config"; }

class Effective {
public:
    explicit Effective(Settings s) : s_(std::move(s)) {}

    const Settings& all() const { return s_; }
    bool has(const std::string& key) const { return s_.count(key) > 0; }

    std::string str(const std::string& key, const std::string& def) {
        auto it = s_.find(key);
        if (it != s_.end()) return it->second;
        s_[key] = def;
        return def;
    }

    double real(const std::string& key, const std::string& def) {
        const std::string v = str(key, def);
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == v.size() && used > 0 && std::isfinite(x), "--" + key + ": not a number: '" + v + "'");
        return x;
    }

    std::int64_t integer(const std::string& key, const std::string& def) {
        const double x = real(key, def);
        require(x == std::floor(x) && std::fabs(x) < 9.0e18, "--" + key + ": not an integer: '" + s_[key] + "'");
        return static_cast<std::int64_t>(x);
    }

    std::uint64_t count(const std::string& key, const std::string& def) {
        const auto x = integer(key, def);
        require(x >= 0, "--" + key + ": must be nonnegative");
        return static_cast<std::uint64_t>(x);
    }

    std::optional<std::int64_t> maybe_integer(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return integer(key, "");
    }

    Exponent exponent(const std::string& key, const std::string& def) { return Exponent::parse(str(key, def)); }

    double alpha() { return IrrationalTarget::parse(str("alpha", "sqrt2")).value(); }

    GammaPair pair() {
        const auto g1 = exponent("gamma1", "0.99");
        const auto g2 = exponent("gamma2", "0.95");
        const std::string mode = str("mode", "auto");
        require(mode == "auto" || mode == "theorem" || mode == "exploratory",
                "--mode: expected auto, theorem or exploratory");
        if (mode == "exploratory") return GammaPair(g1, g2, GammaMode::exploratory);
        if (mode == "auto" && g1.value() == 1.0) return GammaPair::single_set_preset(g2);
        return GammaPair(g1, g2, GammaMode::theorem);
    }

    HarmonicParams harmonic() {
        HarmonicParams p(pair());
        p.t = integer("t", "1");
        p.h1 = integer("h1", "1");
        p.h2 = integer("h2", "1");
        p.alpha = alpha();
        p.epsilon = real("epsilon", "0.01");
        return p;
    }

    ArithmeticTables tables(std::uint64_t limit) {
        return obtain_tables(std::max<std::uint64_t>(limit, 2), str("cache", ""));
    }

private:
    Settings s_;
};

std::vector<Complex> coefficients(const std::string& kind, std::size_t count, std::uint64_t seed) {
    std::vector<Complex> out(count, Complex(1.0, 0.0));
    if (kind == "ones") return out;
    if (kind == "alternating") {
        for (std::size_t i = 0; i < count; ++i) out[i] = (i % 2 == 0) ? 1.0 : -1.0;
        return out;
    }
    require(kind == "random", "--coeff: expected ones, alternating or random");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& c : out) c = e_phase(unit(rng)).value();
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == item.size() && used > 0, "--x-list: not a number: '" + item + "'");
        out.push_back(x);
    }
    require(!out.empty(), "--x-list: empty list");
    return out;
}

Table check_table(std::vector<std::string> columns, std::vector<json> row) {
    return {std::move(columns), {std::move(row)}};
}

struct Outcome {
    Table table;
    bool pass = true;
};

Outcome dispatch(const std::string& cmd, Effective& s, std::ostream& err) {
    if (cmd == "sieve") {
        const auto limit = s.count("limit", "1e6");
        const auto tables = sieve_range(limit);
        std::string path = s.str("cache", "");
        if (s.has("out")) path = s.all().at("out");
        if (!path.empty()) save_cache(tables, path);
        return {check_table({"limit", "prime_count", "cache"}, {limit, tables.prime_count(limit), path})};
    }
    if (cmd == "member") {
        const auto gamma = s.exponent("gamma", "0.75");
        const auto p = s.count("p", "13");
        const auto w = witness(p, gamma);
        return {check_table({"p", "gamma", "member", "witness"},
                            {p, gamma.value(), w.has_value(), w ? json(*w) : json(nullptr)})};
    }
    if (cmd == "count") {
        const auto xs = parse_list(s.str("x-list", "1e5,1e6,1e7"));
        const auto pair = s.pair();
        double top = 0.0;
        for (const double x : xs) top = std::max(top, x);
        const auto tables = s.tables(static_cast<std::uint64_t>(std::floor(top)));
        return {to_table(counting_report(xs, pair, tables))};
    }
    if (cmd == "minima") {
        const double alpha = s.alpha();
        const double beta = s.real("beta", "0");
        const auto pair = s.pair();
        const auto limit = s.count("limit", "1e5");
        const auto tables = s.tables(limit);
        return {to_table(record_minima_scan(alpha, beta, pair, limit, tables))};
    }
    if (cmd == "theorem") {
        const double alpha = s.alpha();
        const double beta = s.real("beta", "0");
        const auto pair = s.pair();
        const double eps = s.real("epsilon", "0.01");
        const auto limit = s.count("limit", "1e6");
        const bool list = s.str("witnesses", "false") == "true";
        const auto tables = s.tables(limit);
        const auto r = theorem_witness_count(alpha, beta, pair, eps, limit, tables);
        return {list ? witnesses_table(r) : to_table(r)};
    }
    if (cmd == "expsum linear") {
        const auto N = s.count("N", "1e4");
        const double alpha = s.alpha();
        const auto q = s.maybe_integer("q");
        const auto tables = s.tables(N);
        return {to_table(linear_prime_sum(N, alpha, tables, q))};
    }
    if (cmd == "expsum double") {
        const auto M = s.integer("M", "1000");
        const auto M1 = s.integer("M1", std::to_string(2 * M));
        return {to_table(double_sum_S(M, M1, s.alpha(), s.real("a", "1"), s.real("b", "1"), s.pair()))};
    }
    if (cmd == "expsum type1" || cmd == "expsum type2") {
        const auto params = s.harmonic();
        const auto M = s.count("M", "16");
        const auto K = s.count("K", "256");
        const std::string kind = s.str("coeff", "random");
        const auto seed = s.count("seed", "1");
        const double bound = s.real("coeff-bound", "1");
        const auto a = coefficients(kind, M, seed);
        if (cmd == "expsum type1") return {to_table(type_I_sum(a, params, static_cast<std::int64_t>(K), bound))};
        TypeIIConfig config;
        config.Q = s.maybe_integer("Q");
        config.epsilon = params.epsilon;
        const auto b = coefficients(kind, K, seed + 1);
        return {to_table(type_II_sum(a, b, params, config, bound))};
    }
    if (cmd == "expsum gamma-star") {
        const auto N = s.count("N", "1e4");
        const auto params = s.harmonic();
        const auto tables = s.tables(N);
        return {to_table(gamma_star(N, params, tables))};
    }
    if (cmd == "expsum gamma-star-decomposed") {
        const auto N = s.count("N", "1e3");
        const auto params = s.harmonic();
        const auto tables = s.tables(N);
        const auto r = s.has("z") ? gamma_star_decomposed(N, params, tables, s.real("z", ""))
                                  : gamma_star_decomposed(N, params, tables);
        auto t = to_table(r);
        const auto direct = gamma_star(N, params, tables);
        const double rel = std::abs(r.value - direct.value) / std::max(1.0, direct.modulus);
        t.columns.insert(t.columns.end(), {"direct_re", "direct_im", "relative_error"});
        t.rows[0].insert(t.rows[0].end(), {direct.value.real(), direct.value.imag(), rel});
        return {t, rel < s.real("tolerance", "1e-6")};
    }
    if (cmd == "verify hb") {
        const double z = s.real("z", "10");
        const auto k = static_cast<int>(s.integer("k", "3"));
        require(k >= 1 && z >= 1.0, "verify hb: requires z >= 1 and k >= 1");
        const auto tables = sieve_range(static_cast<std::uint64_t>(std::floor(2.0 * std::pow(z, k))) + 2);
        const auto r = verify_hb(z, k, tables);
        const bool pass = r.max_error < 1e-9;
        return {check_table({"z", "k", "checked", "max_abs_error", "worst_n", "pass"},
                            {z, k, r.checked, r.max_error, r.worst_n, pass}),
                pass};
    }
    if (cmd == "verify weyl") {
        const auto r = verify_weyl(s.count("trials", "1000"), s.count("seed", "1"),
                                   static_cast<int>(s.integer("max-L", "64")), s.real("max-Q", "64"));
        const bool pass = r.failures == 0;
        return {check_table({"trials", "failures", "max_ratio", "pass"}, {r.trials, r.failures, r.max_ratio, pass}),
                pass};
    }
    if (cmd == "verify psi") {
        const double H = s.real("H", "100");
        const auto grid = s.integer("grid", "10000");
        const double c = psi_envelope_constant(H, grid);
        const double limit = s.real("constant", "2");
        const bool pass = c <= limit;
        return {check_table({"H", "grid", "measured_constant", "constant", "pass"}, {H, grid, c, limit, pass}), pass};
    }
    if (cmd == "verify window") {
        WindowParams w;
        w.delta = s.real("delta", "0.1");
        w.T = s.integer("T", "10");
        const auto grid = s.integer("grid", "10000");
        const double c = window_envelope_constant(w, grid);
        const double limit = s.real("constant", "10");
        const bool pass = c <= limit;
        return {check_table({"delta", "T", "grid", "measured_constant", "constant", "pass"},
                            {w.delta, w.T, grid, c, limit, pass}),
                pass};
    }
    if (cmd == "verify minproduct") {
        const auto M = s.integer("M", "10000");
        const double H1 = s.real("H1", "10");
        const double H2 = s.real("H2", "10");
        const double v = min_product_sum(M, s.pair(), H1, H2, s.real("u1", "0"), s.real("u2", "0"));
        const double bound = zhai_bound(M, H1, H2);
        return {check_table({"M", "H1", "H2", "value", "zhai_bound", "ratio"}, {M, H1, H2, v, bound, v / bound})};
    }
    if (cmd == "approx") {
        const auto target = IrrationalTarget::parse(s.str("alpha", "sqrt2"));
        const auto t = convergents(target, s.integer("q-max", "1000"));
        if (t.truncated) err << json{{"warning", "precision horizon reached before q-max"}}.dump() << '\n';
        return {to_table(t)};
    }
    if (cmd == "upsilon") {
        const auto N = s.count("N", "1e4");
        const auto pair = s.pair();
        const double eps = s.real("epsilon", "0.01");
        auto w = WindowParams::theorem_faithful(static_cast<double>(N), pair, eps);
        if (s.str("delta", "faithful") != "faithful") w.delta = s.real("delta", "");
        if (s.str("T", "faithful") != "faithful") w.T = s.integer("T", "");
        const double alpha = s.alpha();
        const double beta = s.real("beta", "0");
        const auto tables = s.tables(N);
        const auto r = upsilon_eval(N, w, alpha, beta, pair, tables);
        return {to_table(r), r.identity_error() <= 1e-8};
    }
    throw ContractError("unknown command '" + cmd + "'");
}

void error_line(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
    CLI::App app{"Piatetski-Shapiro prime experiments", "psmod1"};
    app.require_subcommand(1);
    app.fallthrough();
    std::map<std::string, std::string> slots;
    std::vector<std::pair<std::string, CLI::Option*>> options;
    auto add = [&](CLI::App* where, const std::string& key, const std::string& help, const std::string& names = "") {
        options.emplace_back(key, where->add_option(names.empty() ? "--" + key : names, slots[key], help));
    };

    add(&app, "config", "key=value configuration file");
    add(&app, "format", "csv or json");
    add(&app, "out", "output path (stdout when absent)");
    add(&app, "threads", "worker count, 0 for all cores");
    add(&app, "cache", "prime cache file (PSMOD1_CACHE)");

    auto pair_opts = [&](CLI::App* c) {
        add(c, "gamma1", "exponent gamma1 (decimal or u/v)");
        add(c, "gamma2", "exponent gamma2 (decimal or u/v)");
        add(c, "mode", "auto, theorem or exploratory");
    };
    auto harmonic_opts = [&](CLI::App* c) {
        pair_opts(c);
        add(c, "alpha", "sqrt2 | golden | pi | e | dec:<digits> | rat:<u>/<v>");
        add(c, "t", "integer t");
        add(c, "h1", "integer h1");
        add(c, "h2", "integer h2");
        add(c, "epsilon", "epsilon", "--epsilon,--eps");
    };

    std::map<CLI::App*, std::string> names;
    auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& full) {
        auto* c = parent->add_subcommand(name, help);
        c->fallthrough();
        names[c] = full;
        return c;
    };

    auto* sieve = sub(&app, "sieve", "build and persist the prime cache", "sieve");
    add(sieve, "limit", "sieve limit");

    auto* member = sub(&app, "member", "membership and witness", "member");
    add(member, "gamma", "exponent gamma");
    add(member, "p", "candidate p");

    auto* count = sub(&app, "count", "counting report", "count");
    pair_opts(count);
    add(count, "x-list", "comma-separated x values");

    auto* minima = sub(&app, "minima", "record minima of ||alpha p + beta||", "minima");
    pair_opts(minima);
    add(minima, "alpha", "target alpha");
    add(minima, "beta", "shift beta");
    add(minima, "limit", "scan limit");

    auto* theorem = sub(&app, "theorem", "theorem witness count", "theorem");
    pair_opts(theorem);
    add(theorem, "alpha", "target alpha");
    add(theorem, "beta", "shift beta");
    add(theorem, "epsilon", "epsilon", "--epsilon,--eps");
    add(theorem, "limit", "scan limit");
    add(theorem, "witnesses", "true to list sample witnesses");

    auto* expsum = sub(&app, "expsum", "exponential sums", "expsum");
    expsum->require_subcommand(1);
    auto* linear = sub(expsum, "linear", "sum Lambda(n) e(n alpha)", "expsum linear");
    add(linear, "N", "length");
    add(linear, "alpha", "target alpha");
    add(linear, "q", "convergent denominator for the bound");
    auto* dbl = sub(expsum, "double", "S(M)", "expsum double");
    pair_opts(dbl);
    add(dbl, "M", "M");
    add(dbl, "M1", "M1 in (M, 2M]");
    add(dbl, "alpha", "target alpha");
    add(dbl, "a", "coefficient of m^gamma1");
    add(dbl, "b", "coefficient of m^gamma2");
    for (const char* which : {"type1", "type2"}) {
        auto* c = sub(expsum, which, std::string(which) + " bilinear sum", std::string("expsum ") + which);
        harmonic_opts(c);
        add(c, "M", "M");
        add(c, "K", "K");
        add(c, "coeff", "ones, alternating or random");
        add(c, "seed", "seed for random coefficients");
        add(c, "coeff-bound", "coefficient bound");
        if (std::string(which) == "type2") add(c, "Q", "shift parameter");
    }
    auto* gs = sub(expsum, "gamma-star", "Gamma*(N) directly", "expsum gamma-star");
    harmonic_opts(gs);
    add(gs, "N", "N");
    auto* gsd = sub(expsum, "gamma-star-decomposed", "Gamma*(N) through the identity", "expsum gamma-star-decomposed");
    harmonic_opts(gsd);
    add(gsd, "N", "N");
    add(gsd, "z", "identity parameter z");
    add(gsd, "tolerance", "relative tolerance against the direct sum");

    auto* verify = sub(&app, "verify", "identity and inequality checks", "verify");
    verify->require_subcommand(1);
    auto* hb = sub(verify, "hb", "Heath-Brown identity", "verify hb");
    add(hb, "z", "z");
    add(hb, "k", "k");
    auto* weyl = sub(verify, "weyl", "shift inequality fuzz", "verify weyl");
    add(weyl, "trials", "trials");
    add(weyl, "seed", "seed");
    add(weyl, "max-L", "largest L");
    add(weyl, "max-Q", "largest Q");
    auto* psi = sub(verify, "psi", "psi truncation envelope", "verify psi");
    add(psi, "H", "H");
    add(psi, "grid", "grid size");
    add(psi, "constant", "accepted constant");
    auto* window = sub(verify, "window", "window expansion envelope", "verify window");
    add(window, "T", "T");
    add(window, "delta", "Delta");
    add(window, "grid", "grid size");
    add(window, "constant", "accepted constant");
    auto* minproduct = sub(verify, "minproduct", "min-product sum vs bound", "verify minproduct");
    pair_opts(minproduct);
    add(minproduct, "M", "M");
    add(minproduct, "H1", "H1");
    add(minproduct, "H2", "H2");
    add(minproduct, "u1", "shift u1");
    add(minproduct, "u2", "shift u2");

    auto* approx = sub(&app, "approx", "continued fraction convergents", "approx");
    add(approx, "alpha", "target alpha");
    add(approx, "q-max", "largest denominator");

    auto* upsilon = sub(&app, "upsilon", "Upsilon and its four-part split", "upsilon");
    pair_opts(upsilon);
    add(upsilon, "N", "N");
    add(upsilon, "delta", "Delta or 'faithful'");
    add(upsilon, "T", "T or 'faithful'");
    add(upsilon, "alpha", "target alpha");
    add(upsilon, "beta", "shift beta");
    add(upsilon, "epsilon", "epsilon", "--epsilon,--eps");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        error_line(err, "usage", e.what());
        return 2;
    }

    CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    const std::string cmd = names[leaf];

    try {
        Settings flags;
        std::vector<std::string> keys;
        for (const auto& [key, opt] : options) {
            keys.push_back(key);
            if (opt->count() > 0) flags[key] = slots[key];
        }
        const Settings file = flags.count("config") ? load_config_file(flags["config"]) : Settings{};
        Effective s(merge_settings(settings_from_env(keys, env), file, flags));

        set_worker_count(static_cast<unsigned>(s.count("threads", "0")));
        const std::string format = s.str("format", "csv");
        require(format == "csv" || format == "json", "--format: expected csv or json");

        const auto outcome = dispatch(cmd, s, err);

        Header header{{"command", cmd}};
        for (const auto& [k, v] : s.all())
            if (echoed(k)) header.emplace_back(k, v);

        std::ofstream file_out;
        std::ostream* sink = &out;
        if (s.has("out") && cmd != "sieve") {
            file_out.open(s.all().at("out"), std::ios::binary);
            require(static_cast<bool>(file_out), "cannot open output file " + s.all().at("out"));
            sink = &file_out;
        }
        if (format == "csv")
            write_csv(*sink, header, outcome.table);
        else
            write_json(*sink, header, outcome.table);
        return outcome.pass ? 0 : 1;
    } catch (const Error& e) {
        error_line(err, e.kind(), e.what());
    } catch (const std::exception& e) {
        error_line(err, "internal", e.what());
    }
    return 2;
}

}  // namespace psmod1::cli
