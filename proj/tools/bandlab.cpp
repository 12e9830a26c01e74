// bandlab: exact experiments with band quadratic digit forms over F_q[t].
//
// Exit codes: 0 success, 1 configuration error, 2 operation-budget refusal.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bandlab/exponents.hpp"
#include "bandlab/jsonio.hpp"
#include "bandlab/sieve.hpp"
#include "bandlab/verify.hpp"

using namespace bandlab;

namespace {

constexpr const char* kPolyGrammar =
    "Polynomials use the grammar 'c_k t^k +- ... +- c_0', e.g. 't^4-1' or "
    "'2t^2+t+1'.  A coefficient is an element index in [0, q): its base-p "
    "digits are the extension coordinates.  Coordinates can also be written "
    "directly as a tuple, e.g. '(1,2)t^2+(0,1)'.";

// --- polynomial string grammar ------------------------------------------

Fq parse_element(const FieldSpec& F, const std::string& s, std::size_t& pos) {
    if (pos < s.size() && s[pos] == '(') {
        ++pos;
        std::vector<coeff_t> coords;
        while (pos < s.size() && s[pos] != ')') {
            std::size_t used = 0;
            coords.push_back(coeff_t(std::stoul(s.substr(pos), &used)));
            pos += used;
            if (pos < s.size() && s[pos] == ',') ++pos;
        }
        if (pos == s.size()) throw std::invalid_argument("unterminated coefficient tuple");
        ++pos;  // ')'
        if (coords.size() != F.e())
            throw std::invalid_argument("coefficient tuple needs e coordinates");
        return Fq(F, std::move(coords));
    }
    std::size_t used = 0;
    const unsigned long idx = std::stoul(s.substr(pos), &used);
    pos += used;
    if (idx >= F.q()) throw std::invalid_argument("coefficient index out of range");
    return Fq::from_index(F, idx);
}

Poly parse_poly(const FieldSpec& F, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) throw std::invalid_argument("empty polynomial");

    Poly acc(F);
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-') {
            negative = s[pos] == '-';
            ++pos;
            if (pos == s.size()) throw std::invalid_argument("dangling sign in polynomial");
        }
        Fq coef = Fq::one(F);
        bool saw_coef = false;
        if (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '(')) {
            coef = parse_element(F, s, pos);
            saw_coef = true;
        }
        int deg = 0;
        if (pos < s.size() && s[pos] == 't') {
            ++pos;
            deg = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                std::size_t used = 0;
                deg = std::stoi(s.substr(pos), &used);
                pos += used;
            }
        } else if (!saw_coef) {
            throw std::invalid_argument("expected coefficient or 't' in polynomial");
        }
        if (negative) coef = -coef;
        acc = acc + Poly::monomial(F, deg, coef);
    }
    return acc;
}

Rat parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

std::string rat_str(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// --- configuration --------------------------------------------------------

struct Options {
    // field
    std::uint64_t q = 0;
    coeff_t p = 3, e = 1;
    std::string modulus;  // comma list, constant term first
    // band and linear forms
    std::string band = "0,1";
    std::vector<std::string> linear;  // "n:l0,l1,...,ln"
    // run controls
    std::uint64_t budget = Budget::kDefaultCap;
    int jobs = 1;
    std::uint64_t seed = 12345;
    std::string out;
    std::string format = "jsonl";
    std::string config_path;
};

std::vector<coeff_t> parse_uint_list(const std::string& s) {
    std::vector<coeff_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(coeff_t(std::stoul(item)));
    return out;
}

// Resolves "config file, overridden by flags".  A flag wins when it was given
// on the command line; otherwise the config file value applies, then the
// built-in default.  The field spec lives behind a stable pointer because
// every element refers back to it.
struct Resolved {
    std::shared_ptr<const FieldSpec> field_ptr;
    std::shared_ptr<const BandSpec> band_ptr;
    Budget budget;
    int jobs;
    std::uint64_t seed;
    std::string out;
    std::string format;
    json file;  // raw config file for command parameters

    const FieldSpec& field() const { return *field_ptr; }
    const BandSpec& band() const { return *band_ptr; }
};

std::pair<coeff_t, coeff_t> split_prime_power(std::uint64_t q) {
    for (coeff_t p = 3; std::uint64_t(p) <= q; p += 2) {
        if (!detail::is_prime_u32(p) || q % p) continue;
        coeff_t e = 0;
        std::uint64_t rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest == 1) return {p, e};
        break;
    }
    throw std::invalid_argument("--q must be an odd prime power");
}

Resolved resolve(const CLI::App& app, const Options& opt) {
    json file = json::object();
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw std::invalid_argument("cannot open config file " + opt.config_path);
        in >> file;
    }

    const auto given = [&](const std::string& flag) {
        const CLI::Option* o = app.get_option_no_throw(flag);
        return o && o->count() > 0;
    };

    coeff_t p = opt.p, e = opt.e;
    if (given("--q")) {
        std::tie(p, e) = split_prime_power(opt.q);
    } else if (given("--p") || given("--e")) {
        // flags as bound
    } else if (file.contains("q")) {
        std::tie(p, e) = split_prime_power(file.at("q").get<std::uint64_t>());
    } else if (file.contains("field")) {
        const json& jf = file.at("field");
        p = jf.at("p").get<coeff_t>();
        e = jf.at("e").get<coeff_t>();
    } else {
        if (file.contains("p")) p = file.at("p").get<coeff_t>();
        if (file.contains("e")) e = file.at("e").get<coeff_t>();
    }

    std::optional<std::vector<coeff_t>> modulus;
    if (given("--modulus"))
        modulus = parse_uint_list(opt.modulus);
    else if (file.contains("modulus"))
        modulus = file.at("modulus").get<std::vector<coeff_t>>();
    else if (file.contains("field") && file.at("field").contains("modulus"))
        modulus = file.at("field").at("modulus").get<std::vector<coeff_t>>();
    auto field_ptr = modulus && e > 1
                         ? std::make_shared<const FieldSpec>(p, e, *modulus)
                         : std::make_shared<const FieldSpec>(FieldSpec::make(p, e));
    const FieldSpec& field = *field_ptr;

    // band: flag list of element indices, or the BandSpec object from a file
    auto band_ptr = std::make_shared<BandSpec>([&]() -> BandSpec {
        if (!given("--band") && file.contains("band")) {
            const json& jb = file.at("band");
            if (jb.is_object()) return band_from_json(field, jb);
            std::vector<Fq> c;
            for (const auto& item : jb) c.push_back(element_from_json(field, item));
            return BandSpec(field, std::move(c));
        }
        std::vector<Fq> c;
        for (coeff_t idx : parse_uint_list(opt.band)) c.push_back(Fq::from_index(field, idx));
        return BandSpec(field, std::move(c));
    }());
    BandSpec& band = *band_ptr;

    for (const std::string& spec : opt.linear) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--linear expects n:l0,l1,...,ln");
        const int n = std::stoi(spec.substr(0, colon));
        std::vector<Fq> lambda;
        for (coeff_t idx : parse_uint_list(spec.substr(colon + 1)))
            lambda.push_back(Fq::from_index(field, idx));
        band.set_linear_form(n, std::move(lambda));
    }
    if (!given("--linear") && file.contains("linear")) {
        for (const auto& [key, value] : file.at("linear").items()) {
            std::vector<Fq> lambda;
            for (const auto& item : value) lambda.push_back(element_from_json(field, item));
            band.set_linear_form(std::stoi(key), std::move(lambda));
        }
    }

    Resolved r{std::move(field_ptr),
               std::move(band_ptr),
               Budget{given("--budget") ? opt.budget
                                        : file.value("budget", opt.budget)},
               given("--jobs") ? opt.jobs : file.value("jobs", opt.jobs),
               given("--seed") ? opt.seed : file.value("seed", opt.seed),
               given("--out") ? opt.out : file.value("out", opt.out),
               given("--format") ? opt.format : file.value("format", opt.format),
               std::move(file)};
    if (r.format != "jsonl" && r.format != "csv")
        throw std::invalid_argument("--format must be jsonl or csv");
    return r;
}

// Command parameter: flag if given, else config file, else default/required.
template <class T>
T param(const Resolved& r, const CLI::App* cmd, const std::string& flag,
        const std::string& key, const T& flag_value, std::optional<T> fallback = {}) {
    const CLI::Option* o = cmd->get_option_no_throw(flag);
    if (o && o->count() > 0) return flag_value;
    if (r.file.contains(key)) return r.file.at(key).get<T>();
    if (fallback) return *fallback;
    throw std::invalid_argument("missing required parameter " + flag);
}

// --- output ---------------------------------------------------------------

struct Emitter {
    std::ofstream file;
    std::ostream* stream = &std::cout;
    bool csv = false;
    bool header_done = false;

    Emitter(const std::string& path, const std::string& format) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file " + path);
            stream = &file;
        }
        csv = format == "csv";
    }

    void record(const json& j, const std::string& csv_header, const std::string& csv_row) {
        if (csv) {
            if (!header_done) {
                *stream << csv_header << "\n";
                header_done = true;
            }
            *stream << csv_row << "\n";
        } else {
            *stream << j.dump() << "\n";
        }
    }
};

json base_config(const Resolved& r) {
    return json{{"field", to_json(r.field())}, {"band", to_json(r.band())},
                {"budget", r.budget.cap()},  {"jobs", r.jobs},
                {"seed", r.seed},            {"format", r.format}};
}

// --- commands ---------------------------------------------------------------

int cmd_scan(const Resolved& r, int n, const std::vector<std::uint64_t>& gammas) {
    const ScanResult scan = scan_counts(r.band(), n, r.budget, r.jobs);
    json config = base_config(r);
    config["n"] = n;
    Emitter out(r.out, r.format);
    for (std::uint64_t gi = 0; gi < r.field().q(); ++gi) {
        if (!gammas.empty() &&
            std::find(gammas.begin(), gammas.end(), gi) == gammas.end())
            continue;
        const Fq gamma = Fq::from_index(r.field(), gi);
        json rec{{"cmd", "scan"},
                 {"config", config},
                 {"gamma", to_json(gamma)},
                 {"gamma_index", gi},
                 {"count", scan.counts[gi]},
                 {"total", scan.total},
                 {"reference", scan.reference}};
        std::ostringstream row;
        row << gi << "," << scan.counts[gi] << "," << scan.total << ","
            << scan.reference;
        out.record(rec, "gamma_index,count,total,reference", row.str());
    }
    return 0;
}

int cmd_charsum(const Resolved& r, int n, std::uint64_t scale_idx, bool weighted) {
    CharacterChoice sel;
    if (scale_idx != 0) sel = CharacterSelector{Fq::from_index(r.field(), scale_idx)};
    const CharSumResult res =
        weighted ? charsum_vonmangoldt(r.band(), n, sel, r.budget, r.jobs)
                 : charsum_irreducible(r.band(), n, sel, r.budget, r.jobs);
    json config = base_config(r);
    config["n"] = n;
    config["scale"] = scale_idx;
    config["vonmangoldt"] = weighted;
    json rec{{"cmd", "charsum"},
             {"config", config},
             {"counts", res.counts.counts},
             {"magnitude", res.magnitude},
             {"phase", res.phase},
             {"total_weight", res.total_weight}};
    Emitter out(r.out, r.format);
    std::ostringstream row;
    row << res.magnitude << "," << res.phase << "," << res.total_weight;
    out.record(rec, "magnitude,phase,total_weight", row.str());
    return 0;
}

int cmd_sigma(const Resolved& r, int n, int u, int v, std::uint64_t scale_idx) {
    const VaughanParams params(n, u, v);  // throws on u+v >= n
    CharacterChoice sel;
    if (scale_idx != 0) sel = CharacterSelector{Fq::from_index(r.field(), scale_idx)};

    const Sigma1Result s1 = sigma1(r.band(), params, sel, r.budget);
    const Sigma2Result s2 = sigma2(r.band(), params, sel, r.budget);

    json config = base_config(r);
    config["n"] = n;
    config["u"] = u;
    config["v"] = v;
    config["scale"] = scale_idx;
    Emitter out(r.out, r.format);
    for (std::size_t k = 0; k < s1.per_k.size(); ++k) {
        json rec{{"cmd", "sigma1"}, {"config", config}, {"k", k}, {"T_k", s1.per_k[k]}};
        std::ostringstream row;
        row << "sigma1," << k << "," << s1.per_k[k];
        out.record(rec, "kind,k,value", row.str());
    }
    json total{{"cmd", "sigma1-total"}, {"config", config}, {"value", s1.total}};
    out.record(total, "kind,k,value", "sigma1-total,," + std::to_string(s1.total));
    json rec2{{"cmd", "sigma2"},
              {"config", config},
              {"value", s2.value},
              {"witness_i", s2.witness_i},
              {"witness_g1", to_string(s2.witness_g1)},
              {"witness_exceptional", s2.witness_exceptional},
              {"exceptional_within_tau", s2.exceptional_within_tau}};
    std::ostringstream row2;
    row2 << "sigma2," << s2.witness_i << "," << s2.value;
    out.record(rec2, "kind,k,value", row2.str());
    return 0;
}

int cmd_rank(const Resolved& r, const std::string& g_text, int N) {
    const Poly g = parse_poly(r.field(), g_text);
    const RankFloor rf = typeI_rank_check(r.band(), g, N);
    const int delta = N + 1 - rf.rank;
    json config = base_config(r);
    config["g"] = g_text;
    config["N"] = N;
    json rec{{"cmd", "rank"},
             {"config", config},
             {"input", json{{"g", to_string(g)}, {"N", N}}},
             {"rank", rf.rank},
             {"floor", rf.floor},
             {"delta", delta},
             {"ok", rf.ok()}};
    Emitter out(r.out, r.format);
    std::ostringstream row;
    row << to_string(g) << "," << N << "," << rf.rank << "," << rf.floor << ","
        << delta << "," << rf.ok();
    out.record(rec, "g,N,rank,floor,delta,ok", row.str());
    return 0;
}

int cmd_radical(const Resolved& r, const std::string& g_text, int N) {
    const Poly g = parse_poly(r.field(), g_text);
    const RadicalReport direct = delta_A(r.band(), g, N);
    const RadicalReport gap = radical_via_gap(r.band(), g, N);
    const bool agree = direct.dimension == gap.dimension;
    json basis = json::array(), basis_text = json::array();
    for (const Poly& h : direct.basis) {
        basis.push_back(to_json(h));
        basis_text.push_back(to_string(h));
    }
    json config = base_config(r);
    config["g"] = g_text;
    config["N"] = N;
    json rec{{"cmd", "radical"},      {"config", config},
             {"g", to_string(g)},     {"N", N},
             {"delta", direct.dimension}, {"gap_delta", gap.dimension},
             {"agree", agree},        {"basis", basis},
             {"basis_text", basis_text}};
    Emitter out(r.out, r.format);
    std::ostringstream row;
    row << to_string(g) << "," << N << "," << direct.dimension << ","
        << gap.dimension << "," << agree;
    out.record(rec, "g,N,delta,gap_delta,agree", row.str());
    return agree ? 0 : 1;
}

int cmd_incidence(const Resolved& r, int d, int N) {
    const IncidenceResult res = incidence_sum(r.field(), d, N, r.budget);
    json config = base_config(r);
    config["d"] = d;
    config["N"] = N;
    json rec{{"cmd", "incidence"},
             {"config", config},
             {"d", d},
             {"N", N},
             {"by_symbol", res.by_symbol.str()},
             {"by_kernel", res.by_kernel.str()},
             {"equal", res.by_symbol == res.by_kernel},
             {"monitor_exponent", res.monitor_exponent}};
    Emitter out(r.out, r.format);
    std::ostringstream row;
    row << d << "," << N << "," << res.by_symbol.str() << "," << res.by_kernel.str()
        << "," << (res.by_symbol == res.by_kernel) << "," << res.monitor_exponent;
    out.record(rec, "d,N,by_symbol,by_kernel,equal,monitor_exponent", row.str());
    return res.by_symbol == res.by_kernel ? 0 : 1;
}

int cmd_reciprocal(const Resolved& r, const std::string& b_text) {
    const Poly b = parse_poly(r.field(), b_text);
    const ReciprocalSolutions res = reciprocal_solutions(b, r.budget);
    json sols = json::array(), sols_text = json::array();
    for (const Poly& a : res.solutions) {
        sols.push_back(to_json(a));
        sols_text.push_back(to_string(a));
    }
    json config = base_config(r);
    config["b"] = b_text;
    json rec{{"cmd", "reciprocal"},
             {"config", config},
             {"b", to_string(b)},
             {"solutions", sols},
             {"solutions_text", sols_text},
             {"count", res.solutions.size()},
             {"tau", res.tau_b},
             {"constructive_match", res.constructive_match},
             {"injective", res.injective}};
    Emitter out(r.out, r.format);
    std::ostringstream row;
    row << to_string(b) << "," << res.solutions.size() << "," << res.tau_b << ","
        << res.constructive_match << "," << res.injective;
    out.record(rec, "b,count,tau,constructive_match,injective", row.str());
    return 0;
}

int cmd_verify(const Resolved& r, const std::string& suite, int max_deg, int max_N,
               int max_k, int max_i, int max_d, int trials, int max_den) {
    VerifyReport rep;
    if (suite == "gap")
        rep = verify_gap(r.field(), max_deg, max_N);
    else if (suite == "delta-symbol")
        rep = verify_delta_symbol(r.field(), max_deg, max_N);
    else if (suite == "typeII-rank")
        rep = verify_typeII(r.field(), max_k, max_i);
    else if (suite == "typeI-rank")
        rep = verify_typeI(r.field(), max_k, max_i, max_d, max_N);
    else if (suite == "reciprocal")
        rep = verify_reciprocal(r.field(), max_deg, r.budget);
    else if (suite == "gauss")
        rep = verify_gauss(r.seed, trials, 4, r.budget);
    else if (suite == "monic-slice")
        rep = verify_monic_slice(r.seed, trials, 4);
    else if (suite == "incidence")
        rep = verify_incidence(r.field(), max_d, max_N, r.budget);
    else if (suite == "appendix-A")
        rep = verify_appendix_a();
    else if (suite == "exponents")
        rep = verify_exponents(max_den);
    else
        throw std::invalid_argument("unknown verify suite: " + suite);

    // per-case table on stdout; machine records go to --out when given
    std::printf("suite %-14s %zu cases, %lld failed\n", rep.suite.c_str(),
                rep.cases.size(), rep.failures());
    int shown = 0;
    for (const auto& c : rep.cases) {
        if (c.ok && rep.cases.size() > 50) continue;  // keep big sweeps readable
        std::printf("  %s  %s  [%s]\n", c.ok ? "ok  " : "FAIL", c.label.c_str(),
                    c.detail.c_str());
        if (!c.ok && ++shown == 20) break;
    }

    if (!r.out.empty()) {
        Emitter out(r.out, r.format);
        json config = base_config(r);
        config["suite"] = suite;
        for (const auto& c : rep.cases) {
            json rec{{"cmd", "verify"}, {"config", config}, {"input", c.label},
                     {"ok", c.ok},      {"detail", c.detail}};
            for (const auto& [key, value] : c.metrics) rec[key] = value;
            std::ostringstream row;
            row << '"' << c.label << "\"," << c.ok;
            out.record(rec, "input,ok", row.str());
        }
    }
    return rep.all_ok() ? 0 : 1;
}

int cmd_audit_exponents(const Resolved& r, const std::string& u_text,
                        const std::string& v_text, bool grid, int max_den) {
    const Rat u = parse_rational(u_text), v = parse_rational(v_text);
    const ExponentAudit a = exponent_audit(u, v);
    json config = base_config(r);
    config["u"] = u_text;
    config["v"] = v_text;
    json rec{{"cmd", "audit-exponents"},
             {"config", config},
             {"type_one", rat_str(a.type_one)},
             {"type_two_first", rat_str(a.type_two_first)},
             {"type_two_second", rat_str(a.type_two_second)},
             {"maximum", rat_str(a.maximum)},
             {"saving", a.saving}};
    Emitter out(r.out, r.format);
    std::ostringstream row;
    row << rat_str(a.type_one) << "," << rat_str(a.type_two_first) << ","
        << rat_str(a.type_two_second) << "," << rat_str(a.maximum) << "," << a.saving;
    out.record(rec, "type_one,type_two_first,type_two_second,maximum,saving",
               row.str());
    if (grid) {
        const ExponentGridResult best = exponent_grid_search(max_den);
        json grec{{"cmd", "audit-exponents-grid"},
                  {"config", config},
                  {"max_den", max_den},
                  {"best_u", rat_str(best.u)},
                  {"best_v", rat_str(best.v)},
                  {"best_maximum", rat_str(best.maximum)}};
        std::ostringstream grow;
        grow << rat_str(best.u) << "," << rat_str(best.v) << ","
             << rat_str(best.maximum) << ",,";
        out.record(grec, "type_one,type_two_first,type_two_second,maximum,saving",
                   grow.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("bandlab: exact band quadratic form experiments over "
                             "F_q[t]\n\n") +
                 kPolyGrammar};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file; flags override it");
    app.add_option("--q", opt.q, "field size q = p^e (odd prime power)");
    app.add_option("--p", opt.p, "field characteristic (odd prime)");
    app.add_option("--e", opt.e, "extension degree");
    app.add_option("--modulus", opt.modulus,
                   "extension modulus coefficients c_0,...,c_e (monic, constant first)");
    app.add_option("--band", opt.band, "band coefficients c_0,...,c_m as element indices");
    app.add_option("--linear", opt.linear,
                   "linear digit form, n:l_0,...,l_n (repeatable)");
    app.add_option("--budget", opt.budget, "elementary field-operation cap");
    app.add_option("--jobs", opt.jobs, "worker threads for sweeps");
    app.add_option("--seed", opt.seed, "seed for randomized sweeps");
    app.add_option("--out", opt.out, "output path (default stdout)");
    app.add_option("--format", opt.format, "output format: jsonl or csv");

    // scan
    auto* scan = app.add_subcommand("scan", "count Q_A values over P(n)");
    int scan_n = 0;
    std::vector<std::uint64_t> scan_gammas;
    auto* scan_n_opt = scan->add_option("--n", scan_n, "degree n");
    scan->add_option("--gamma", scan_gammas, "restrict output to these gamma indices");

    // charsum
    auto* charsum = app.add_subcommand("charsum", "character sum over P(n) or M(n)");
    int cs_n = 0;
    std::uint64_t cs_scale = 1;
    bool cs_weighted = false;
    auto* cs_n_opt = charsum->add_option("--n", cs_n, "degree n");
    charsum->add_option("--scale", cs_scale,
                        "character scale as an element index; 0 is the trivial character");
    charsum->add_flag("--vonmangoldt", cs_weighted,
                      "weight by the von Mangoldt function over M(n)");

    // sigma
    auto* sigma = app.add_subcommand("sigma", "the two Vaughan sums");
    int sg_n = 0, sg_u = 0, sg_v = 0;
    std::uint64_t sg_scale = 1;
    auto* sg_n_opt = sigma->add_option("--n", sg_n, "degree n");
    auto* sg_u_opt = sigma->add_option("--u", sg_u, "cutoff u");
    auto* sg_v_opt = sigma->add_option("--v", sg_v, "cutoff v");
    sigma->add_option("--scale", sg_scale, "character scale (0 = trivial)");

    // rank
    auto* rank = app.add_subcommand("rank", "rank and defect of the multiplier form");
    std::string rank_g;
    int rank_N = 0;
    auto* rank_g_opt = rank->add_option("--g", rank_g, "multiplier polynomial");
    auto* rank_N_opt = rank->add_option("--N", rank_N, "digit space dimension bound N");

    // radical
    auto* radical = app.add_subcommand("radical", "radical basis, computed two ways");
    std::string rad_g;
    int rad_N = 0;
    auto* rad_g_opt = radical->add_option("--g", rad_g, "multiplier polynomial");
    auto* rad_N_opt = radical->add_option("--N", rad_N, "digit space dimension bound N");

    // incidence
    auto* incidence = app.add_subcommand("incidence", "reciprocal-symbol incidence count");
    int inc_d = 0, inc_N = 0;
    auto* inc_d_opt = incidence->add_option("--d", inc_d, "reciprocal centre d");
    auto* inc_N_opt = incidence->add_option("--N", inc_N, "auxiliary space bound N");

    // reciprocal
    auto* reciprocal = app.add_subcommand("reciprocal", "solve a* a = b* b");
    std::string rec_b;
    auto* rec_b_opt = reciprocal->add_option("--b", rec_b, "monic right-hand side b");

    // verify
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    int vf_max_deg = 3, vf_max_N = 5, vf_max_k = 3, vf_max_i = 6, vf_max_d = 4,
        vf_trials = 1000, vf_max_den = 20;
    verify->add_option("suite", suite,
                       "one of: gap, delta-symbol, typeII-rank, typeI-rank, reciprocal, "
                       "gauss, monic-slice, incidence, appendix-A, exponents")
        ->required();
    verify->add_option("--max-deg", vf_max_deg, "largest multiplier degree");
    verify->add_option("--max-N", vf_max_N, "largest space bound N");
    verify->add_option("--max-k", vf_max_k, "largest factor degree k");
    verify->add_option("--max-i", vf_max_i, "largest inner degree i");
    verify->add_option("--max-d", vf_max_d, "largest reciprocal centre d");
    verify->add_option("--trials", vf_trials, "random trials");
    verify->add_option("--max-den", vf_max_den, "largest cutoff denominator");

    // audit-exponents
    auto* audit = app.add_subcommand("audit-exponents", "exact rational exponent audit");
    std::string au_u = "1/5", au_v = "7/10";
    bool au_grid = false;
    int au_max_den = 20;
    audit->add_option("--u", au_u, "cutoff u as a fraction of n, e.g. 1/5");
    audit->add_option("--v", au_v, "cutoff v as a fraction of n, e.g. 7/10");
    audit->add_flag("--grid", au_grid, "also run the bounded-denominator grid search");
    audit->add_option("--max-den", au_max_den, "grid denominator bound");

    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();  // global flags may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const Resolved r = resolve(app, opt);
        if (scan->parsed()) {
            const int n = param(r, scan, "--n", "n", scan_n,
                                scan_n_opt->count() ? std::optional<int>{scan_n}
                                                    : std::nullopt);
            return cmd_scan(r, n, scan_gammas);
        }
        if (charsum->parsed()) {
            const int n = param(r, charsum, "--n", "n", cs_n,
                                cs_n_opt->count() ? std::optional<int>{cs_n}
                                                  : std::nullopt);
            return cmd_charsum(r, n, cs_scale, cs_weighted);
        }
        if (sigma->parsed()) {
            const int n = param(r, sigma, "--n", "n", sg_n,
                                sg_n_opt->count() ? std::optional<int>{sg_n}
                                                  : std::nullopt);
            const int u = param(r, sigma, "--u", "u", sg_u,
                                sg_u_opt->count() ? std::optional<int>{sg_u}
                                                  : std::nullopt);
            const int v = param(r, sigma, "--v", "v", sg_v,
                                sg_v_opt->count() ? std::optional<int>{sg_v}
                                                  : std::nullopt);
            return cmd_sigma(r, n, u, v, sg_scale);
        }
        if (rank->parsed()) {
            const std::string g = param(r, rank, "--g", "g", rank_g,
                                        rank_g_opt->count()
                                            ? std::optional<std::string>{rank_g}
                                            : std::nullopt);
            const int N = param(r, rank, "--N", "N", rank_N,
                                rank_N_opt->count() ? std::optional<int>{rank_N}
                                                    : std::nullopt);
            return cmd_rank(r, g, N);
        }
        if (radical->parsed()) {
            const std::string g = param(r, radical, "--g", "g", rad_g,
                                        rad_g_opt->count()
                                            ? std::optional<std::string>{rad_g}
                                            : std::nullopt);
            const int N = param(r, radical, "--N", "N", rad_N,
                                rad_N_opt->count() ? std::optional<int>{rad_N}
                                                   : std::nullopt);
            return cmd_radical(r, g, N);
        }
        if (incidence->parsed()) {
            const int d = param(r, incidence, "--d", "d", inc_d,
                                inc_d_opt->count() ? std::optional<int>{inc_d}
                                                   : std::nullopt);
            const int N = param(r, incidence, "--N", "N", inc_N,
                                inc_N_opt->count() ? std::optional<int>{inc_N}
                                                   : std::nullopt);
            return cmd_incidence(r, d, N);
        }
        if (reciprocal->parsed()) {
            const std::string b = param(r, reciprocal, "--b", "b", rec_b,
                                        rec_b_opt->count()
                                            ? std::optional<std::string>{rec_b}
                                            : std::nullopt);
            return cmd_reciprocal(r, b);
        }
        if (verify->parsed())
            return cmd_verify(r, suite, vf_max_deg, vf_max_N, vf_max_k, vf_max_i,
                              vf_max_d, vf_trials, vf_max_den);
        if (audit->parsed()) return cmd_audit_exponents(r, au_u, au_v, au_grid, au_max_den);
        std::cerr << "no subcommand given\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
