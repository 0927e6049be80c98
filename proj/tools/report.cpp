#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "orlicz/boyd.hpp"
#include "orlicz/dsl.hpp"
#include "orlicz/optimality.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/reduction.hpp"

namespace orlicz::cli {

namespace {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string short_num(double x, int digits = 4) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

Json num(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round12(x);
}

Json strings(const std::vector<std::string>& v) {
    Json j = Json::array();
    for (const auto& s : v) j.push_back(s);
    return j;
}

std::vector<double> decade_points(const Config& cfg) {
    std::vector<double> out;
    const double lo = std::ceil(std::log10(cfg.t_min) - 1e-9);
    const double hi = std::floor(std::log10(cfg.t_max) + 1e-9);
    for (double d = lo; d <= hi; d += 1) out.push_back(std::pow(10.0, d));
    return out;
}

Json grid_dump(const YoungFn& a, const Config& cfg) {
    Json g = Json::array();
    for (double t : decade_points(cfg)) g.push_back(Json::array({num(t), num(eval(a, t))}));
    return g;
}

std::string grid_csv(const YoungFn& a, const Config& cfg) {
    std::string out = "t,value\n";
    char buf[64];
    for (double t : cfg.log_grid()) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", std::exp(t), eval(a, std::exp(t)));
        out += buf;
    }
    return out;
}

std::string describe_end(const YoungFn& a, End end) {
    const bool zero = end == End::Zero;
    if (zero && a.log_zero_end > -kInf) return "0 below " + short_num(a.zero_plateau_end());
    if (!zero && a.log_finite_sup < kInf) return "inf above " + short_num(a.finite_sup());
    if (a.pure_symbolic()) {
        AsymPiece p = zero ? a.symbolic->near_zero : a.symbolic->near_infinity;
        p.log_coef = 0;
        return render_piece(p);
    }
    double p = std::nan("");
    if (a.exponents) p = zero ? a.exponents->zero : a.exponents->infinity;
    double lp = 0.0;
    if (!a.table.empty()) {
        const TailFit& tf = zero ? a.table.tail_zero : a.table.tail_infinity;
        if (tf.kind == TailFit::Kind::Power) {
            if (std::isnan(p)) p = tf.exponent + (a.ratio_table ? 1.0 : 0.0);
            lp = tf.log_pow;
        }
    }
    if (std::isnan(p)) return "unresolved";
    if (std::isinf(p)) return zero ? "superpolynomial decay" : "superpolynomial growth";
    std::string s = "t^" + short_num(p);
    if (std::abs(lp) >= 0.05) s += "*l(t)^" + short_num(lp, 2);
    return s;
}

SpaceSpec parse_or_throw(const std::string& text) { return parse_spec(text); }

Json header(const std::string& command, const Options& opt) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["n"] = opt.ctx.n;
    j["gamma"] = num(opt.ctx.gamma);
    return j;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["holds"] = v.holds;
    j["constant"] = num(v.constant);
    j["criterion"] = criterion_name(v.criterion_used);
    j["worst_t"] = num(v.worst_t);
    j["flags"] = strings(v.flags);
    return j;
}

Json bounded_json(const std::string& ta, const std::string& tb, const Options& opt) {
    const SpaceSpec sa = parse_or_throw(ta);
    const SpaceSpec sb = parse_or_throw(tb);
    const YoungFn a = to_young(sa, opt.cfg);
    const YoungFn b = to_young(sb, opt.cfg);
    const Verdict v = bounded(a, b, opt.ctx, opt.cfg);
    Json j;
    j["domain"] = render(sa);
    j["target"] = render(sb);
    j["holds"] = v.holds;
    j["constant"] = num(v.constant);
    j["criterion"] = criterion_name(v.criterion_used);
    j["worst_t"] = num(v.worst_t);
    j["flags"] = strings(v.flags);
    j["criteria"] = {{"iii", verdict_json(criterion_iii(a, b, opt.ctx, opt.cfg))},
                     {"iv", verdict_json(criterion_iv(a, b, opt.ctx, opt.cfg))}};
    return j;
}

Json probe_json(const std::string& ta, const std::string& tb, const Options& opt, std::string* csv) {
    const SpaceSpec sa = parse_or_throw(ta);
    const SpaceSpec sb = parse_or_throw(tb);
    const YoungFn a = to_young(sa, opt.cfg);
    const YoungFn b = to_young(sb, opt.cfg);
    const ProbeReport r = norm_probe(a, b, opt.ctx, default_probe_family(), default_probe_scales(), opt.cfg);
    Json j;
    j["domain"] = render(sa);
    j["target"] = render(sb);
    j["trend"] = trend_name(r.trend);
    j["max_ratio"] = num(r.max_ratio);
    j["ratios"] = Json::array();
    for (const auto& e : r.ratios) {
        Json x;
        x["function"] = e.function;
        x["scale"] = num(e.scale);
        x["ratio"] = num(e.ratio);
        x["flags"] = strings(e.flags);
        j["ratios"].push_back(std::move(x));
        if (csv) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s,%s,%.12g,%.12g\n", render(sa).c_str(), e.function.c_str(), e.scale, e.ratio);
            *csv += buf;
        }
    }
    j["member_trends"] = Json::array();
    for (ProbeTrend t : r.member_trends) j["member_trends"].push_back(trend_name(t));
    return j;
}

std::vector<std::pair<std::string, std::string>> read_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open fixtures file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw InputError(std::string("fixtures file is not valid JSON: ") + e.what());
    }
    std::vector<std::pair<std::string, std::string>> out;
    if (!j.is_array()) throw InputError("fixtures file must hold an array of [domain, target] pairs");
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            throw InputError("fixtures file must hold an array of [domain, target] pairs");
        out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    return out;
}

void flat_csv(const Json& j, std::string& out) {
    out += "field,value\n";
    for (const auto& [k, v] : j.items()) {
        if (v.is_structured()) continue;
        out += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
}

Outcome execute(const std::string& command, const std::vector<std::string>& specs, const Options& opt) {
    const bool csv = opt.format == "csv";
    const bool pairwise = command == "bounded" || command == "probe";
    const std::size_t want = pairwise ? 2 : 1;
    Outcome o;
    Json j = header(command, opt);
    std::string csv_out;

    if (pairwise && !opt.fixtures.empty()) {
        if (!specs.empty()) throw InputError(command + " takes either two specs or --fixtures, not both");
        j["results"] = Json::array();
        if (csv && command == "probe") csv_out = "domain,function,scale,ratio\n";
        for (const auto& [ta, tb] : read_fixtures(opt.fixtures))
            j["results"].push_back(command == "bounded" ? bounded_json(ta, tb, opt)
                                                        : probe_json(ta, tb, opt, csv ? &csv_out : nullptr));
        if (csv && command == "bounded") {
            csv_out = "domain,target,holds,constant\n";
            for (const auto& r : j["results"])
                csv_out += r["domain"].get<std::string>() + "," + r["target"].get<std::string>() + "," +
                           (r["holds"].get<bool>() ? "true" : "false") + "," +
                           (r["constant"].is_string() ? r["constant"].get<std::string>() : r["constant"].dump()) + "\n";
        }
        o.out = csv ? csv_out : j.dump(2) + "\n";
        return o;
    }
    if (specs.size() != want)
        throw InputError(command + " expects " + std::to_string(want) + " spec argument" + (want > 1 ? "s" : ""));

    const YoungFn* dump = nullptr;
    std::optional<YoungFn> keep;
    if (command == "target") {
        const SpaceSpec s = parse_or_throw(specs[0]);
        const TargetResult r = optimal_target(to_young(s, opt.cfg), opt.ctx, opt.cfg, opt.numeric);
        j["input"] = render(s);
        j["kind"] = kind_name(r.kind);
        j["target"] = r.optimal ? Json(describe(*r.optimal)) : Json(nullptr);
        j["i_Agamma"] = num(r.index_value);
        j["gate"] = num(r.gate);
        j["evidence"] = strings(r.evidence);
        if (r.optimal) {
            keep = *r.optimal;
            j["grid"] = grid_dump(*keep, opt.cfg);
        }
    } else if (command == "domain") {
        const SpaceSpec s = parse_or_throw(specs[0]);
        const DomainResult r = optimal_domain(to_young(s, opt.cfg), opt.ctx, opt.cfg);
        j["input"] = render(s);
        j["kind"] = kind_name(r.kind);
        j["domain"] = r.optimal ? Json(describe(*r.optimal)) : Json(nullptr);
        j["simplified"] = r.simplified;
        j["evidence"] = strings(r.evidence);
        if (r.optimal) {
            keep = *r.optimal;
            j["grid"] = grid_dump(*keep, opt.cfg);
        }
    } else if (command == "bounded") {
        const Json r = bounded_json(specs[0], specs[1], opt);
        for (const auto& [k, v] : r.items()) j[k] = v;
    } else if (command == "probe") {
        csv_out = "domain,function,scale,ratio\n";
        const Json r = probe_json(specs[0], specs[1], opt, &csv_out);
        for (const auto& [k, v] : r.items()) j[k] = v;
    } else if (command == "boyd") {
        const SpaceSpec s = parse_or_throw(specs[0]);
        const BoydEstimate b = boyd_indices(to_young(s, opt.cfg), opt.numeric);
        if (b.indeterminate()) throw OrliczError("indeterminate-index", "Boyd index estimate did not converge");
        j["input"] = render(s);
        j["i_lower"] = num(b.i_lower);
        j["I_upper"] = num(b.I_upper);
        j["method"] = b.method == BoydEstimate::Method::SymbolicExact ? "symbolic-exact" : "numeric-limit";
        j["spread_lower"] = num(b.spread_lower);
        j["spread_upper"] = num(b.spread_upper);
        j["flags"] = strings(b.flags);
    } else if (command == "conjugate") {
        const SpaceSpec s = parse_or_throw(specs[0]);
        keep = conjugate(to_young(s, opt.cfg), opt.cfg);
        j["input"] = render(s);
        j["conjugate"] = describe(*keep);
        j["grid"] = grid_dump(*keep, opt.cfg);
    }
    if (keep) dump = &*keep;

    if (!csv) {
        o.out = j.dump(2) + "\n";
    } else if (dump) {
        o.out = grid_csv(*dump, opt.cfg);
    } else if (command == "probe") {
        o.out = csv_out;
    } else {
        flat_csv(j, o.out);
    }
    return o;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"target", "domain", "bounded", "boyd", "conjugate", "probe"};
    return c;
}

double round12(double x) {
    if (!std::isfinite(x) || x == 0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string describe(const YoungFn& a) {
    const std::string z = describe_end(a, End::Zero);
    const std::string i = describe_end(a, End::Infinity);
    if (z == i) return "~ " + z;
    return "~ " + z + " near 0, " + i + " near inf";
}

Outcome run(const std::string& command, const std::vector<std::string>& specs, const Options& opt) {
    Outcome o;
    try {
        return execute(command, specs, opt);
    } catch (const SpecError& e) {
        o.exit_code = kExitParse;
        o.err = std::string("parse error (") + e.code + "): " + e.what() + "\n";
    } catch (const InputError& e) {
        o.exit_code = kExitParse;
        o.err = std::string("input error: ") + e.what() + "\n";
    } catch (const OrliczError& e) {
        const bool input = e.code.rfind("invalid-", 0) == 0 || e.code == "csv-parse" || e.code == "dimension-mismatch";
        o.exit_code = input ? kExitParse : kExitIndeterminate;
        o.err = (input ? "input error (" : "indeterminate (") + e.code + "): " + e.what() + "\n";
    }
    return o;
}

}  // namespace orlicz::cli
