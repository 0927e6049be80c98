#include "orlicz/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

namespace orlicz {

namespace {

struct Family {
    const char* name;
    std::size_t arity;
};

constexpr Family kFamilies[] = {{"Lp", 1}, {"Zygmund", 4}, {"ExpType", 2}, {"Linf", 0}, {"L1", 0}, {"PowModifier", 4}};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    SpaceSpec spec() {
        SpaceSpec out;
        out.source = s_;
        skip();
        const std::size_t name_at = pos_;
        out.name = ident();
        const Family* fam = nullptr;
        for (const Family& f : kFamilies)
            if (out.name == f.name) fam = &f;
        if (!fam) throw SpecError("semantic-error", name_at, "unknown family '" + out.name + "'");
        skip();
        std::vector<std::size_t> param_at;
        const std::size_t open_at = pos_;
        if (accept('(')) {
            skip();
            if (!(fam->arity == 0 && peek() == ')')) {
                for (std::size_t k = 0;; ++k) {
                    skip();
                    param_at.push_back(pos_);
                    if (out.name == "PowModifier" && (k == 1 || k == 3))
                        out.modifiers.push_back(piece());
                    else
                        out.params.push_back(real());
                    skip();
                    if (accept(')')) break;
                    expect(',');
                }
            } else {
                expect(')');
            }
        }
        if (param_at.size() != fam->arity)
            throw SpecError("semantic-error", open_at,
                            out.name + " takes " + std::to_string(fam->arity) + " parameters, got " +
                                std::to_string(param_at.size()));
        check_params(out, param_at);
        skip();
        while (peek() == '@') {
            const std::size_t at = pos_++;
            if (s_.compare(pos_, 3, "inf") == 0) {
                pos_ += 3;
                if (out.at_infinity) throw SpecError("syntax-error", at, "duplicate @inf piece");
                skip();
                out.at_infinity = piece();
            } else if (accept('0')) {
                if (out.at_zero) throw SpecError("syntax-error", at, "duplicate @0 piece");
                skip();
                out.at_zero = piece();
            } else {
                throw SpecError("syntax-error", pos_, "expected '0' or 'inf' after '@'");
            }
            skip();
        }
        if (pos_ != s_.size()) throw SpecError("syntax-error", pos_, "unexpected trailing input");
        return out;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[nodiscard]] char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool accept(const char* word) {
        if (s_.compare(pos_, std::strlen(word), word) != 0) return false;
        pos_ += std::strlen(word);
        return true;
    }
    void expect(char c) {
        skip();
        if (!accept(c)) throw SpecError("syntax-error", pos_, std::string("expected '") + c + "'");
        skip();
    }
    std::string ident() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_ || !std::isalpha(static_cast<unsigned char>(s_[start])))
            throw SpecError("syntax-error", start, "expected a family name");
        return s_.substr(start, pos_ - start);
    }
    [[nodiscard]] bool starts_real() const {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' ||
               s_.compare(pos_, 3, "inf") == 0;
    }
    double real() {
        skip();
        const std::size_t start = pos_;
        double sign = 1.0;
        if (peek() == '-' || peek() == '+') {
            if (peek() == '-') sign = -1.0;
            ++pos_;
        }
        if (accept("inf")) return sign * kInf;
        const std::size_t digits = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (accept('.'))
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == digits || (pos_ == digits + 1 && s_[digits] == '.'))
            throw SpecError("syntax-error", start, "expected a number");
        if (peek() == 'e' || peek() == 'E') {
            const std::size_t e = pos_++;
            if (peek() == '-' || peek() == '+') ++pos_;
            const std::size_t ed = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (pos_ == ed) pos_ = e;
        }
        double v = 0.0;
        const auto res = std::from_chars(s_.data() + digits, s_.data() + pos_, v);
        if (res.ec != std::errc()) throw SpecError("syntax-error", start, "number out of range");
        return sign * v;
    }
    double exponent() {
        skip();
        expect('^');
        return real();
    }

    AsymPiece piece() {
        AsymPiece p;
        std::optional<std::size_t> constant_at;
        std::size_t factors = 0;
        for (;;) {
            skip();
            const std::size_t at = pos_;
            ++factors;
            if (accept("exp")) {
                expect('(');
                ExpTerm e;
                double sign = 1.0;
                if (accept('-')) sign = -1.0;
                else accept('+');
                skip();
                e.coef = starts_real() ? real() : 1.0;
                if (!(e.coef >= 0) || std::isinf(e.coef)) throw SpecError("syntax-error", at, "bad exp coefficient");
                e.coef *= sign;
                skip();
                accept('*');
                skip();
                if (accept("sqrtlog")) {
                    e.of_log = true;
                    e.beta = 0.5;
                } else if (accept("log")) {
                    e.of_log = true;
                    e.beta = exponent();
                } else if (accept('t')) {
                    e.beta = exponent();
                } else {
                    throw SpecError("syntax-error", pos_, "expected sqrtlog, log^R or t^R");
                }
                skip();
                if (!accept(')')) throw SpecError("syntax-error", pos_, "expected ')'");
                if (!std::isfinite(e.beta)) throw SpecError("semantic-error", at, "exp exponent must be finite");
                p.exps.push_back(e);
            } else if (accept("ll(t)")) {
                p.loglog_pow += finite(exponent(), at);
            } else if (accept("l(t)")) {
                p.log_pow += finite(exponent(), at);
            } else if (accept("e^")) {
                pos_ -= 1;
                p.log_coef += finite(exponent(), at);
            } else if (accept('t')) {
                const double x = exponent();
                if (std::isnan(x) || x < 0) throw SpecError("semantic-error", at, "t exponent must be nonnegative");
                p.power += x;
            } else if (accept("inf")) {
                p.constant = AsymPiece::Const::Infinity;
                constant_at = at;
            } else if (starts_real()) {
                const double c = real();
                if (c == 0) {
                    p.constant = AsymPiece::Const::Zero;
                    constant_at = at;
                } else if (c > 0 && std::isfinite(c)) {
                    p.log_coef += std::log(c);
                } else {
                    throw SpecError("semantic-error", at, "coefficient must be positive");
                }
            } else {
                throw SpecError("syntax-error", at, "expected a factor");
            }
            skip();
            if (!accept('*')) break;
        }
        if (constant_at && factors > 1)
            throw SpecError("semantic-error", *constant_at, "0 and inf must stand alone");
        return p;
    }

    static double finite(double x, std::size_t at) {
        if (!std::isfinite(x)) throw SpecError("semantic-error", at, "exponent must be finite");
        return x;
    }

    static void check_params(const SpaceSpec& s, const std::vector<std::size_t>& at) {
        const auto& p = s.params;
        auto fail = [&](std::size_t i, const std::string& msg) { throw SpecError("semantic-error", at[i], msg); };
        if (s.name == "Lp") {
            if (!(p[0] >= 1)) fail(0, "Lp needs p >= 1");
        } else if (s.name == "Zygmund") {
            for (std::size_t i = 0; i < 4; ++i)
                if (!std::isfinite(p[i])) fail(i, "Zygmund parameters must be finite");
            if (!(p[0] >= 1)) fail(0, "Zygmund needs p0 >= 1");
            if (!(p[2] >= 1)) fail(2, "Zygmund needs pinf >= 1");
            if (p[0] == 1 && p[1] > 0) fail(1, "Zygmund with p0 = 1 needs a0 <= 0");
            if (p[2] == 1 && p[3] < 0) fail(3, "Zygmund with pinf = 1 needs ainf >= 0");
        } else if (s.name == "ExpType") {
            if (!(p[0] < 0) || std::isinf(p[0])) fail(0, "ExpType needs b0 < 0");
            if (!(p[1] > 0) || std::isinf(p[1])) fail(1, "ExpType needs binf > 0");
        } else if (s.name == "PowModifier") {
            if (!(p[0] >= 1) || std::isinf(p[0])) fail(0, "PowModifier needs 1 <= p0 < inf");
            if (!(p[1] >= 1) || std::isinf(p[1])) fail(2, "PowModifier needs 1 <= pinf < inf");
        }
    }
};

AsymPiece times(AsymPiece a, const AsymPiece& b) {
    a.log_coef += b.log_coef;
    a.power += b.power;
    a.log_pow += b.log_pow;
    a.loglog_pow += b.loglog_pow;
    a.exps.insert(a.exps.end(), b.exps.begin(), b.exps.end());
    return a;
}

}  // namespace

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string render_piece(const AsymPiece& p) {
    if (p.constant == AsymPiece::Const::Zero) return "0";
    if (p.constant == AsymPiece::Const::Infinity) return "inf";
    std::vector<std::string> f;
    if (p.log_coef != 0) f.push_back("e^" + format_real(p.log_coef));
    if (p.power != 0) f.push_back("t^" + format_real(p.power));
    if (p.log_pow != 0) f.push_back("l(t)^" + format_real(p.log_pow));
    if (p.loglog_pow != 0) f.push_back("ll(t)^" + format_real(p.loglog_pow));
    for (const ExpTerm& e : p.exps) {
        std::string arg = e.of_log ? (e.beta == 0.5 ? "sqrtlog" : "log^" + format_real(e.beta)) : "t^" + format_real(e.beta);
        f.push_back("exp(" + format_real(e.coef) + " " + arg + ")");
    }
    if (f.empty()) return "1";
    std::string out = f.front();
    for (std::size_t i = 1; i < f.size(); ++i) out += "*" + f[i];
    return out;
}

SpaceSpec parse_spec(const std::string& text) {
    SpaceSpec s = Parser(text).spec();
    if (s.name == "PowModifier" || s.at_zero || s.at_infinity) {
        s.diagnostics = validate(to_young(s));
        if (!s.diagnostics.empty())
            throw SpecError("semantic-error", 0, "not a Young function: " + s.diagnostics.front());
    }
    return s;
}

std::string render(const SpaceSpec& s) {
    std::string out = s.name;
    if (s.name == "PowModifier") {
        out += "(" + format_real(s.params[0]) + "," + render_piece(s.modifiers[0]) + "," + format_real(s.params[1]) +
               "," + render_piece(s.modifiers[1]) + ")";
    } else if (!s.params.empty()) {
        out += "(";
        for (std::size_t i = 0; i < s.params.size(); ++i) out += (i ? "," : "") + format_real(s.params[i]);
        out += ")";
    }
    if (s.at_zero) out += " @0 " + render_piece(*s.at_zero);
    if (s.at_infinity) out += " @inf " + render_piece(*s.at_infinity);
    return out;
}

AsymptoticFamily family_of(const SpaceSpec& s) {
    AsymptoticFamily f;
    const auto& p = s.params;
    if (s.name == "Lp") {
        f = {families::power_piece(p[0]), families::power_piece(p[0])};
        if (std::isinf(p[0])) {
            f.near_zero = {};
            f.near_zero.constant = AsymPiece::Const::Zero;
            f.near_infinity = {};
            f.near_infinity.constant = AsymPiece::Const::Infinity;
        }
    } else if (s.name == "Zygmund") {
        f = {families::power_piece(p[0], p[1]), families::power_piece(p[2], p[3])};
    } else if (s.name == "ExpType") {
        f.near_zero.exps.push_back({-1.0, p[0], false});
        f.near_infinity.exps.push_back({1.0, p[1], false});
    } else if (s.name == "Linf") {
        f.near_zero.constant = AsymPiece::Const::Zero;
        f.near_infinity.constant = AsymPiece::Const::Infinity;
    } else if (s.name == "L1") {
        f = {families::power_piece(1.0), families::power_piece(1.0)};
    } else if (s.name == "PowModifier") {
        f = {times(families::power_piece(p[0]), s.modifiers[0]), times(families::power_piece(p[1]), s.modifiers[1])};
    }
    if (s.at_zero) f.near_zero = *s.at_zero;
    if (s.at_infinity) f.near_infinity = *s.at_infinity;
    return f;
}

YoungFn to_young(const SpaceSpec& s, const Config& cfg) {
    if (!s.at_zero && !s.at_infinity) {
        const auto& p = s.params;
        if (s.name == "Lp") return families::power(p[0], 1.0, cfg);
        if (s.name == "Zygmund") return families::zygmund(p[0], p[1], p[2], p[3], cfg);
        if (s.name == "ExpType") return families::exp_type(p[0], p[1], cfg);
        if (s.name == "Linf") return families::linf(cfg);
        if (s.name == "L1") return families::l1(cfg);
    }
    YoungFn y = from_family(family_of(s), cfg);
    y.label = s.name;
    return y;
}

}  // namespace orlicz
