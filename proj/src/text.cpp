#include "paracr/text.hpp"

#include <cctype>

namespace paracr {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line), column_(column)
{
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::set<Var>& allowed, const Grading& g)
        : src_(s), allowed_(allowed), g_(g)
    {
    }

    WeightedPoly poly()
    {
        WeightedPoly out(g_, kExactOrder);
        skip();
        if (atEnd()) fail("empty polynomial");
        bool first = true;
        while (!atEnd()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                advance();
                skip();
            } else if (!first) {
                fail(std::string("expected '+' or '-', found '") + peek() + "'");
            }
            first = false;
            out += sign * term();
        }
        return out;
    }

private:
    WeightedPoly term()
    {
        Rational c = 1;
        bool any = false;
        if (!atEnd() && std::isdigit(static_cast<unsigned char>(peek()))) {
            mpz_class num(digits());
            mpz_class den = 1;
            skip();
            if (!atEnd() && peek() == '/') {
                advance();
                skip();
                if (atEnd() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
                den = mpz_class(digits());
                if (den == 0) fail("zero denominator");
                skip();
            }
            c = Rational(num, den);
            c.canonicalize();
            any = true;
        }
        std::array<unsigned, kVarCount> e{};
        while (!atEnd() && std::isalpha(static_cast<unsigned char>(peek()))) {
            const int l = line_, col = col_;
            const char ch = peek();
            advance();
            Var v;
            switch (ch) {
            case 'a': v = Var::a; break;
            case 'b': v = Var::b; break;
            case 'x': v = Var::x; break;
            case 'y': v = Var::y; break;
            case 'p': v = Var::p; break;
            default: throw ParseError(std::string("unknown variable ") + ch, l, col);
            }
            if (!allowed_.count(v)) throw ParseError(std::string("variable ") + ch + " is not allowed here", l, col);
            skip();
            unsigned power = 1;
            if (!atEnd() && peek() == '^') {
                advance();
                skip();
                if (atEnd() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
                const std::string d = digits();
                if (d.size() > 4) fail("exponent too large");
                power = static_cast<unsigned>(std::stoul(d));
                skip();
            }
            e[index(v)] += power;
            any = true;
        }
        if (!any) fail(atEnd() ? "expected a term" : std::string("unexpected '") + peek() + "'");
        return WeightedPoly::monomial(Monomial::fromExponents(e), c, g_);
    }

    std::string digits()
    {
        std::string d;
        while (!atEnd() && std::isdigit(static_cast<unsigned char>(peek()))) {
            d += peek();
            advance();
        }
        return d;
    }

    void skip()
    {
        while (!atEnd()) {
            if (peek() == '#') {
                while (!atEnd() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool atEnd() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    const std::string& src_;
    const std::set<Var>& allowed_;
    Grading g_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

}  // namespace

WeightedPoly parsePoly(const std::string& text, const std::set<Var>& allowed, const Grading& g)
{
    return Parser(text, allowed, g).poly();
}

Grading parseGrading(const std::string& text)
{
    if (text == "regular") return Grading::regular();
    if (text == "total") return Grading::totalDegree();
    if (text.rfind("singular:", 0) == 0) {
        const std::string k = text.substr(9);
        if (k.empty() || k.size() > 3 || k.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad grading '" + text + "'");
        const int kk = std::stoi(k);
        if (kk < 2) throw std::invalid_argument("singular grading needs k >= 2");
        return Grading::singular(kk);
    }
    throw std::invalid_argument("unknown grading '" + text + "' (regular, total, singular:k)");
}

Json toJson(const Rational& q) { return toString(q); }

Json toJson(Monomial m)
{
    Json e = Json::object();
    for (Var v : kAllVars)
        if (m.exponent(v) != 0) e[std::string(1, varName(v))] = m.exponent(v);
    return e;
}

Json toJson(const WeightedPoly& p)
{
    Json terms = Json::array();
    for (const auto& t : p.terms()) terms.push_back({{"coef", toJson(t.coef)}, {"exps", toJson(t.mono)}});
    return {{"grading", describe(p.grading())},
            {"order", p.isExact() ? Json(nullptr) : Json(p.order())},
            {"terms", terms},
            {"text", formatPoly(p)}};
}

Json toJson(const PointMap& m)
{
    return {{"X", toJson(m.X)}, {"Y", toJson(m.Y)}, {"A", toJson(m.A)}, {"B", toJson(m.B)}};
}

Json toJson(const VFieldJet& v)
{
    return {{"eta", toJson(v.eta)}, {"alpha", toJson(v.alpha)}, {"beta", toJson(v.beta)}, {"xi", toJson(v.xi)},
            {"text", formatField(v)}};
}

WeightedPoly polyFromJson(const Json& j)
{
    const Grading g = parseGrading(j.at("grading").get<std::string>() == "total-degree"
                                       ? std::string("total")
                                       : j.at("grading").get<std::string>());
    const int order = j.at("order").is_null() ? kExactOrder : j.at("order").get<int>();
    WeightedPoly p(g, order);
    for (const auto& t : j.at("terms")) {
        std::array<unsigned, kVarCount> e{};
        for (auto it = t.at("exps").begin(); it != t.at("exps").end(); ++it) {
            const std::string& name = it.key();
            bool found = false;
            for (Var v : kAllVars)
                if (name.size() == 1 && varName(v) == name[0]) {
                    e[index(v)] = it.value().get<unsigned>();
                    found = true;
                }
            if (!found) throw std::invalid_argument("unknown variable '" + name + "' in JSON");
        }
        p += WeightedPoly::monomial(Monomial::fromExponents(e), parseRational(t.at("coef").get<std::string>()), g, order);
    }
    return p;
}

}  // namespace paracr
