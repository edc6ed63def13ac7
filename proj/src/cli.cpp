#include "conjlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conjlab/conjugacy.hpp"
#include "conjlab/errors.hpp"
#include "conjlab/io.hpp"
#include "conjlab/verify.hpp"

namespace conjlab {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kSchema = "conjlab/1";

struct Opts {
    std::string map1, map2;
    std::string x = "0";
    std::string tol;
    std::string samples;
    std::string format = "csv";
    std::string out;
    int depth = 0;
    int digits = 30;
    unsigned long seed = 1;
    bool trace = false;
};

struct Caps {
    int lattice = kDefaultLatticeCap;
    int path = kDefaultPathCap;
};

Rational tol_of(const Opts& o) {
    if (o.tol.empty()) return make_rational(Integer(1), pow2(40));
    const Rational t = parse_rational(o.tol);
    if (t <= 0) throw UsageError("--tol must be positive");
    return t;
}

std::string dual(const Rational& r, int digits) {
    return fraction_str(r) + "," + decimal_str(r, digits);
}

void emit_json(std::ostream& os, const ojson& j) { os << j.dump(2) << "\n"; }

int cmd_lattice(const Opts& o, const Caps& caps, std::ostream& os) {
    const PLUnimodalMap m = load_map(o.map1);
    const Lattice L = lattice_level(m, o.depth, caps.lattice);
    if (o.format == "json") {
        ojson j{{"schema", kSchema}, {"command", "lattice"}, {"n", L.n}};
        auto rows = ojson::array();
        for (size_t k = 0; k < L.points.size(); ++k)
            rows.push_back({{"k", k},
                            {"mu", fraction_str(L.points[k])},
                            {"mu_dec", decimal_str(L.points[k], o.digits)}});
        j["rows"] = std::move(rows);
        emit_json(os, j);
    } else {
        os << "n,k,mu,mu_dec\n";
        for (size_t k = 0; k < L.points.size(); ++k)
            os << L.n << "," << k << "," << dual(L.points[k], o.digits) << "\n";
    }
    return 0;
}

int cmd_carcass(const Opts& o, const Caps&, std::ostream& os) {
    const PLUnimodalMap m = load_map(o.map1);
    const int n_max = o.depth;
    const auto info = carcass_info(m, n_max);
    if (o.format == "json") {
        ojson j{{"schema", kSchema}, {"command", "carcass"}, {"n_max", n_max}};
        if (info) {
            j["carcass"] = true;
            j["n0"] = info->n0;
            auto ks = ojson::array();
            for (const auto& k : info->kinks)
                ks.push_back({{"kink", fraction_str(k)}, {"dec", decimal_str(k, o.digits)}});
            j["kinks"] = std::move(ks);
        } else {
            j["carcass"] = false;
        }
        emit_json(os, j);
    } else {
        if (info) {
            os << "n0," << info->n0 << "\n";
            for (const auto& k : info->kinks) os << "kink," << dual(k, o.digits) << "\n";
        } else {
            os << "not_carcass_within," << n_max << "\n";
        }
    }
    return info ? 0 : 1;
}

int cmd_expand(const Opts& o, const Caps& caps, std::ostream& os) {
    const PLUnimodalMap m = load_map(o.map1);
    const Rational x = parse_rational(o.x);
    const ExpansionBits exp = expansion(m, x, o.depth, caps.path);
    std::string bits;
    for (int b : exp.bits) bits += static_cast<char>('0' + b);

    auto trace_rows = [&](auto&& emit_row) {
        PathState st = path_init(m, x);
        for (int n = 1; n <= o.depth; ++n) {
            auto [bit, next] = path_step(st);
            st = std::move(next);
            emit_row(n, bit, st);
        }
    };
    if (o.format == "json") {
        ojson j{{"schema", kSchema},
                {"command", "expand"},
                {"x", fraction_str(x)},
                {"bits", bits},
                {"finite", exp.finite}};
        if (o.trace) {
            auto rows = ojson::array();
            trace_rows([&](int n, int bit, const PathState& st) {
                rows.push_back({{"n", n},
                                {"bit", bit},
                                {"k", st.k().get_str()},
                                {"a", fraction_str(st.a())},
                                {"b", fraction_str(st.b())},
                                {"len", fraction_str(st.b() - st.a())}});
            });
            j["trace"] = std::move(rows);
        }
        emit_json(os, j);
    } else {
        os << "bits," << bits << "\n";
        os << "finite," << (exp.finite ? "true" : "false") << "\n";
        if (o.trace) {
            os << "n,bit,k,a,b,len\n";
            trace_rows([&](int n, int bit, const PathState& st) {
                os << n << "," << bit << "," << st.k().get_str() << ","
                   << fraction_str(st.a()) << "," << fraction_str(st.b()) << ","
                   << fraction_str(st.b() - st.a()) << "\n";
            });
        }
    }
    return 0;
}

ojson limit_json(const LimitClass& c, int digits) {
    ojson j{{"tag", limit_tag_name(c.tag)}};
    if (c.value) {
        j["value"] = fraction_str(*c.value);
        j["value_dec"] = decimal_str(*c.value, digits);
    }
    j["tail_min"] = fraction_str(c.tail_min);
    j["tail_max"] = fraction_str(c.tail_max);
    j["tail_last"] = fraction_str(c.tail_last);
    return j;
}

int cmd_slopes(const Opts& o, const Caps& caps, std::ostream& os) {
    const ConjugacyPair pair = pair_init(load_map(o.map1), load_map(o.map2));
    const Rational x = parse_rational(o.x);
    const SlopeSequence seq = slope_sequence(pair, x, o.depth, caps.path);
    const auto [cl, cr] = classify_limits(seq);
    if (o.format == "json") {
        ojson j{{"schema", kSchema}, {"command", "slopes"}, {"x", fraction_str(x)}};
        auto rows = ojson::array();
        for (const auto& e : seq.entries)
            rows.push_back({{"n", e.n},
                            {"left", fraction_str(e.left)},
                            {"right", fraction_str(e.right)},
                            {"left_dec", decimal_str(e.left, o.digits)},
                            {"right_dec", decimal_str(e.right, o.digits)}});
        j["rows"] = std::move(rows);
        j["classification"] = {{"left", limit_json(cl, o.digits)},
                               {"right", limit_json(cr, o.digits)}};
        emit_json(os, j);
    } else {
        os << "n,left,right,left_dec,right_dec\n";
        for (const auto& e : seq.entries)
            os << e.n << "," << fraction_str(e.left) << "," << fraction_str(e.right) << ","
               << decimal_str(e.left, o.digits) << "," << decimal_str(e.right, o.digits) << "\n";
        os << "classification_left," << limit_tag_name(cl.tag)
           << (cl.value ? "," + fraction_str(*cl.value) : "") << "\n";
        os << "classification_right," << limit_tag_name(cr.tag)
           << (cr.value ? "," + fraction_str(*cr.value) : "") << "\n";
    }
    return 0;
}

int cmd_conj_eval(const Opts& o, const Caps& caps, std::ostream& os) {
    const ConjugacyPair pair = pair_init(load_map(o.map1), load_map(o.map2));
    const Rational x = parse_rational(o.x);
    const Rational tol = tol_of(o);

    // Enclosure trace: the same lockstep conj_eval walks, row per depth.
    struct Row {
        int depth;
        Rational lo, hi;
    };
    std::vector<Row> rows;
    PathState s1 = path_init(pair.g1, x);
    IntervalTracker t2 = tracker_init(pair.g2);
    std::optional<Enclosure> result;
    for (int d = 0; !result; ++d) {
        rows.push_back({d, t2.a, t2.b});
        if (s1.x == s1.a())
            result = Enclosure{t2.a, t2.a, d, true};
        else if (s1.x == s1.b())
            result = Enclosure{t2.b, t2.b, d, true};
        else if (t2.b - t2.a <= tol)
            result = Enclosure{t2.a, t2.b, d, false};
        else if (d >= caps.path)
            throw DepthCapExceeded("tolerance unreachable within depth " +
                                   std::to_string(caps.path) + "; achieved width " +
                                   fraction_str(t2.b - t2.a));
        else {
            auto [bit, next] = path_step(s1);
            s1 = std::move(next);
            t2 = tracker_apply(t2, bit);
        }
    }
    if (result->exact) rows.push_back({result->depth, result->lo, result->hi});

    if (o.format == "json") {
        ojson j{{"schema", kSchema},
                {"command", "conj-eval"},
                {"x", fraction_str(x)},
                {"tol", fraction_str(tol)}};
        auto tr = ojson::array();
        for (const auto& r : rows)
            tr.push_back({{"depth", r.depth},
                          {"lo", fraction_str(r.lo)},
                          {"hi", fraction_str(r.hi)},
                          {"width", fraction_str(r.hi - r.lo)}});
        j["trace"] = std::move(tr);
        j["exact"] = result->exact;
        j["depth"] = result->depth;
        j["lo"] = fraction_str(result->lo);
        j["hi"] = fraction_str(result->hi);
        j["lo_dec"] = decimal_str(result->lo, o.digits);
        j["hi_dec"] = decimal_str(result->hi, o.digits);
        emit_json(os, j);
    } else {
        os << "depth,lo,hi,width,lo_dec,hi_dec,width_dec\n";
        for (const auto& r : rows)
            os << r.depth << "," << fraction_str(r.lo) << "," << fraction_str(r.hi) << ","
               << fraction_str(r.hi - r.lo) << "," << decimal_str(r.lo, o.digits) << ","
               << decimal_str(r.hi, o.digits) << "," << decimal_str(r.hi - r.lo, o.digits)
               << "\n";
        os << "exact," << (result->exact ? "true" : "false") << "\n";
        os << "h_lo," << dual(result->lo, o.digits) << "\n";
        os << "h_hi," << dual(result->hi, o.digits) << "\n";
    }
    return 0;
}

int cmd_quotients(const Opts& o, const Caps& caps, std::ostream& os) {
    const ConjugacyPair pair = pair_init(load_map(o.map1), load_map(o.map2));
    const Rational x = parse_rational(o.x);
    const Rational tol = tol_of(o);
    if (o.samples.empty()) throw UsageError("--samples is required for quotients");
    std::vector<Rational> samples;
    std::stringstream ss(o.samples);
    std::string item;
    while (std::getline(ss, item, ',')) samples.push_back(parse_rational(item));
    const auto qs = difference_quotients(pair, x, samples, tol, caps.path);
    if (o.format == "json") {
        ojson j{{"schema", kSchema},
                {"command", "quotients"},
                {"x", fraction_str(x)},
                {"tol", fraction_str(tol)}};
        auto rows = ojson::array();
        for (const auto& q : qs)
            rows.push_back({{"s", fraction_str(q.s)},
                            {"q_lo", fraction_str(q.lo)},
                            {"q_hi", fraction_str(q.hi)},
                            {"q_lo_dec", decimal_str(q.lo, o.digits)},
                            {"q_hi_dec", decimal_str(q.hi, o.digits)}});
        j["rows"] = std::move(rows);
        emit_json(os, j);
    } else {
        os << "s,q_lo,q_hi,s_dec,q_lo_dec,q_hi_dec\n";
        for (const auto& q : qs)
            os << fraction_str(q.s) << "," << fraction_str(q.lo) << "," << fraction_str(q.hi)
               << "," << decimal_str(q.s, o.digits) << "," << decimal_str(q.lo, o.digits) << ","
               << decimal_str(q.hi, o.digits) << "\n";
    }
    return 0;
}

int cmd_verify(const Opts& o, const Caps&, std::ostream& os) {
    const PLUnimodalMap g1 = load_map(o.map1);
    std::optional<PLUnimodalMap> g2;
    if (!o.map2.empty()) g2 = load_map(o.map2);
    const auto results = verify_suite(g1, g2, o.seed, o.depth);
    const bool all = std::all_of(results.begin(), results.end(),
                                 [](const PropertyResult& r) { return r.pass; });
    if (o.format == "json") {
        ojson j{{"schema", kSchema},
                {"command", "verify"},
                {"seed", o.seed},
                {"depth", o.depth}};
        auto rows = ojson::array();
        for (const auto& r : results)
            rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        j["results"] = std::move(rows);
        j["all_pass"] = all;
        emit_json(os, j);
    } else {
        for (const auto& r : results) {
            if (r.pass)
                os << "PASS," << r.name << "\n";
            else
                os << "FAIL," << r.name << "," << r.detail << "\n";
        }
        os << "RESULT," << (all ? "PASS" : "FAIL") << "\n";
    }
    return all ? 0 : 1;
}

int cmd_thm5_demo(const Opts& o, const Caps& caps, std::ostream& os) {
    const ConjugacyPair pair = pair_init(tent_map(), thm5_map());
    const Rational xstar(2, 3);
    const Rational gx = eval(pair.g2, xstar);
    if (gx != xstar) throw InternalInvariantViolated("x* = 2/3 is not fixed by the demo map");

    const SlopeSequence seq = slope_sequence(pair, xstar, 20, caps.path);
    for (const auto& e : seq.entries)
        if (e.left != 1 || e.right != 1)
            throw InternalInvariantViolated("demo slope differs from 1 at level " +
                                            std::to_string(e.n));

    const Rational tol = make_rational(Integer(1), pow2(40));
    const int d_lo = 10, d_hi = 20;
    const FlankSamples fs = path_flank_samples(pair.g1, xstar, d_lo, d_hi, caps.path);
    const auto qL = difference_quotients(pair, xstar, fs.left, tol, caps.path);
    const auto qR = difference_quotients(pair, xstar, fs.right, tol, caps.path);
    auto spread_lo = [](const std::vector<QuotientBound>& qs) {
        Rational mx = qs.front().lo, mn = qs.front().hi;
        for (const auto& q : qs) {
            mx = std::max(mx, q.lo);
            mn = std::min(mn, q.hi);
        }
        return mx - mn;
    };
    const Rational sL = spread_lo(qL), sR = spread_lo(qR);
    if (sL <= 0 || sR <= 0)
        throw InternalInvariantViolated("demo quotient spread is not positive");

    const PLDetectResult pl = pl_detector(pair, 1, 8, caps.lattice);
    if (pl.stabilized)
        throw InternalInvariantViolated("demo pl_detector unexpectedly stabilized");

    if (o.format == "json") {
        ojson j{{"schema", kSchema}, {"command", "thm5-demo"}};
        j["n0_g1"] = pair.info1.n0;
        j["n0_g2"] = pair.info2.n0;
        j["x_star"] = fraction_str(xstar);
        j["g2_of_x_star"] = fraction_str(gx);
        auto slopes = ojson::array();
        for (const auto& e : seq.entries)
            slopes.push_back({{"n", e.n},
                              {"left", fraction_str(e.left)},
                              {"right", fraction_str(e.right)}});
        j["slopes"] = std::move(slopes);
        auto quot = ojson::array();
        for (size_t i = 0; i < qL.size(); ++i)
            quot.push_back({{"side", "L"},
                            {"depth", d_lo + static_cast<int>(i)},
                            {"s", fraction_str(qL[i].s)},
                            {"q_lo", fraction_str(qL[i].lo)},
                            {"q_hi", fraction_str(qL[i].hi)},
                            {"q_lo_dec", decimal_str(qL[i].lo, o.digits)},
                            {"q_hi_dec", decimal_str(qL[i].hi, o.digits)}});
        for (size_t i = 0; i < qR.size(); ++i)
            quot.push_back({{"side", "R"},
                            {"depth", d_lo + static_cast<int>(i)},
                            {"s", fraction_str(qR[i].s)},
                            {"q_lo", fraction_str(qR[i].lo)},
                            {"q_hi", fraction_str(qR[i].hi)},
                            {"q_lo_dec", decimal_str(qR[i].lo, o.digits)},
                            {"q_hi_dec", decimal_str(qR[i].hi, o.digits)}});
        j["quotients"] = std::move(quot);
        j["spread_left_lo"] = fraction_str(sL);
        j["spread_right_lo"] = fraction_str(sR);
        j["pl_detector"] = pl.stabilized ? "StabilizedAt" : "NotStabilized";
        auto nk = ojson::array();
        for (const auto& [lvl, cnt] : pl.new_kinks) nk.push_back({{"level", lvl}, {"count", cnt}});
        j["new_kinks"] = std::move(nk);
        emit_json(os, j);
    } else {
        os << "thm5-demo\n";
        os << "n0_g1," << pair.info1.n0 << "\n";
        os << "n0_g2," << pair.info2.n0 << "\n";
        os << "x_star," << dual(xstar, o.digits) << "\n";
        os << "g2_of_x_star," << dual(gx, o.digits) << "\n";
        os << "\nslopes\nn,left,right\n";
        for (const auto& e : seq.entries)
            os << e.n << "," << fraction_str(e.left) << "," << fraction_str(e.right) << "\n";
        os << "\nquotients,tol," << fraction_str(tol) << "\n";
        os << "side,depth,s,q_lo,q_hi,q_lo_dec,q_hi_dec\n";
        for (size_t i = 0; i < qL.size(); ++i)
            os << "L," << (d_lo + static_cast<int>(i)) << "," << fraction_str(qL[i].s) << ","
               << fraction_str(qL[i].lo) << "," << fraction_str(qL[i].hi) << ","
               << decimal_str(qL[i].lo, o.digits) << "," << decimal_str(qL[i].hi, o.digits)
               << "\n";
        for (size_t i = 0; i < qR.size(); ++i)
            os << "R," << (d_lo + static_cast<int>(i)) << "," << fraction_str(qR[i].s) << ","
               << fraction_str(qR[i].lo) << "," << fraction_str(qR[i].hi) << ","
               << decimal_str(qR[i].lo, o.digits) << "," << decimal_str(qR[i].hi, o.digits)
               << "\n";
        os << "spread_left_lo," << dual(sL, o.digits) << "\n";
        os << "spread_right_lo," << dual(sR, o.digits) << "\n";
        os << "\npl_detector,NotStabilized\n";
        os << "new_kinks";
        for (const auto& [lvl, cnt] : pl.new_kinks) os << "," << lvl << ":" << cnt;
        os << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"conjlab: exact analysis of conjugacies between piecewise-linear unimodal "
                 "carcass maps"};
    app.require_subcommand(1);
    Opts o;
    Caps caps;

    if (const char* env = std::getenv("CONJLAB_DEPTH_CAP")) {
        try {
            const int cap = std::stoi(env);
            if (cap < 1) throw std::invalid_argument("nonpositive");
            caps.lattice = cap;
            caps.path = cap;
        } catch (const std::exception&) {
            err << "usage error: CONJLAB_DEPTH_CAP must be a positive integer\n";
            return 2;
        }
    }

    auto add_map1 = [&](CLI::App* sub) {
        sub->add_option("--map", o.map1, "map: tent | skew:<v> | thm5 | JSON file path")
            ->required();
    };
    auto add_map2 = [&](CLI::App* sub) {
        sub->add_option("--map2", o.map2, "second map (conjugacy target g2)")->required();
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "output format (csv|json)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", o.out, "write output to file instead of stdout");
        sub->add_option("--digits", o.digits, "decimal digits for rendered rationals")
            ->check(CLI::Range(0, 10000));
    };

    CLI::App* lattice = app.add_subcommand("lattice", "emit the level-n lattice g^{-n}(0)");
    add_map1(lattice);
    lattice->add_option("--depth", o.depth, "lattice level n")->required();
    add_common(lattice);

    CLI::App* carcass = app.add_subcommand("carcass", "detect n0 and report kinks");
    add_map1(carcass);
    o.depth = kDefaultCarcassCap;
    carcass->add_option("--depth", o.depth, "maximal level to search (default 12)");
    add_common(carcass);

    CLI::App* expand = app.add_subcommand("expand", "g-expansion bits of a point");
    add_map1(expand);
    expand->add_option("--x", o.x, "point as p/q")->required();
    expand->add_option("--depth", o.depth, "number of bits")->required();
    expand->add_flag("--trace", o.trace, "also emit the path table n,bit,k,a,b,len");
    add_common(expand);

    CLI::App* slopes = app.add_subcommand("slopes", "Ulam slope sequence at a point");
    add_map1(slopes);
    add_map2(slopes);
    slopes->add_option("--x", o.x, "point as p/q")->required();
    slopes->add_option("--depth", o.depth, "number of levels (default 40)");
    add_common(slopes);

    CLI::App* conj = app.add_subcommand("conj-eval", "certified enclosure of h(x)");
    add_map1(conj);
    add_map2(conj);
    conj->add_option("--x", o.x, "point as p/q")->required();
    conj->add_option("--tol", o.tol, "target width (default 1/2^40)");
    add_common(conj);

    CLI::App* quot = app.add_subcommand("quotients", "difference-quotient bounds");
    add_map1(quot);
    add_map2(quot);
    quot->add_option("--x", o.x, "base point as p/q")->required();
    quot->add_option("--samples", o.samples, "comma-separated sample points")->required();
    quot->add_option("--tol", o.tol, "enclosure width (default 1/2^40)");
    add_common(quot);

    CLI::App* verify = app.add_subcommand("verify", "run the exact property suite");
    add_map1(verify);
    verify->add_option("--map2", o.map2, "optional second map for conjugacy properties");
    verify->add_option("--seed", o.seed, "seed for sampled points");
    verify->add_option("--depth", o.depth, "lattice/path depth budget (default 8)");
    add_common(verify);

    CLI::App* demo = app.add_subcommand("thm5-demo", "packaged non-differentiability demo");
    add_common(demo);

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    std::string prog = "conjlab";
    argv.push_back(prog.data());
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream obuf, ebuf;
        const int code = app.exit(e, obuf, ebuf);
        out << obuf.str();
        err << ebuf.str();
        return code == 0 ? 0 : 2;
    }

    // Per-command depth defaults for options left unset.
    if (slopes->parsed() && slopes->count("--depth") == 0) o.depth = 40;
    if (verify->parsed() && verify->count("--depth") == 0) o.depth = 8;
    if (carcass->parsed() && carcass->count("--depth") == 0) o.depth = kDefaultCarcassCap;

    try {
        std::ostringstream buf;
        int code = 0;
        if (lattice->parsed())
            code = cmd_lattice(o, caps, buf);
        else if (carcass->parsed())
            code = cmd_carcass(o, caps, buf);
        else if (expand->parsed())
            code = cmd_expand(o, caps, buf);
        else if (slopes->parsed())
            code = cmd_slopes(o, caps, buf);
        else if (conj->parsed())
            code = cmd_conj_eval(o, caps, buf);
        else if (quot->parsed())
            code = cmd_quotients(o, caps, buf);
        else if (verify->parsed())
            code = cmd_verify(o, caps, buf);
        else if (demo->parsed())
            code = cmd_thm5_demo(o, caps, buf);
        if (o.out.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw UsageError("cannot write output file '" + o.out + "'");
            f << buf.str();
        }
        return code;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.exit_code();
    }
}

}  // namespace conjlab
