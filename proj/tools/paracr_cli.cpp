// paracr: command line front end.  Exit status 0 on success, 1 when the
// input is outside an algorithm's domain, 2 on parse or configuration errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "paracr/automorphisms.hpp"
#include "paracr/cm_operator.hpp"
#include "paracr/ode_bridge.hpp"
#include "paracr/regular_normal.hpp"
#include "paracr/singular_normal.hpp"
#include "paracr/text.hpp"

using namespace paracr;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string expr;
    std::vector<std::string> inputs;
    int order = 0;  // 0: command default
    bool json = false;
    std::string grading;
    std::string method = "algebraic";
    bool normalizeFirst = false;
    int ell = 0, ellTo = -1;
    int maxOrder = 24;
};

struct Outcome {
    int code = 0;
    std::string text;
    Json json = Json::object();
    std::string error;
};

const std::set<Var> kSurfaceVars{Var::a, Var::b, Var::x};
const std::set<Var> kOdeVars{Var::x, Var::y, Var::p};

int checkedOrder(const Options& o, int fallback)
{
    const int L = o.order ? o.order : fallback;
    if (L < 2) throw ConfigError("order must be at least 2");
    if (L > o.maxOrder)
        throw ConfigError("order " + std::to_string(L) + " exceeds the guard " + std::to_string(o.maxOrder) +
                          " (set PARACR_MAX_ORDER to raise it)");
    return L;
}

std::string yesNo(bool b) { return b ? "yes" : "no"; }

std::string monoList(const std::vector<Monomial>& v)
{
    if (v.empty()) return "-";
    std::string s;
    for (Monomial m : v) s += (s.empty() ? "" : ", ") + toString(m);
    return s;
}

Json monoJson(const std::vector<Monomial>& v)
{
    Json a = Json::array();
    for (Monomial m : v) a.push_back(toJson(m));
    return a;
}

std::string indent(const std::string& s, const std::string& pad = "  ")
{
    std::string out = pad;
    for (char c : s) {
        out += c;
        if (c == '\n') out += pad;
    }
    return out;
}

Json eliminatedJson(const std::map<int, std::vector<Monomial>>& e)
{
    Json j = Json::object();
    for (const auto& [w, v] : e) j[std::to_string(w)] = monoJson(v);
    return j;
}

std::string eliminatedText(const std::map<int, std::vector<Monomial>>& e)
{
    if (e.empty()) return "eliminated: none\n";
    std::string s = "eliminated:\n";
    for (const auto& [w, v] : e) s += "  weight " + std::to_string(w) + ": " + monoList(v) + "\n";
    return s;
}

Json conditionsJson(const NormalConditions& c)
{
    Json h = Json::array();
    for (bool b : c.holds) h.push_back(b);
    return {{"leading", c.leading}, {"holds", h}, {"normal", c.all()}};
}

std::string conditionsText(const NormalConditions& c)
{
    static const char* names[] = {"i", "ii", "iii", "iv", "v"};
    std::string s = "conditions: leading " + yesNo(c.leading);
    for (std::size_t i = 0; i < 5; ++i) s += std::string(", (") + names[i] + ") " + yesNo(c.holds[i]);
    return s + "\n";
}

Json typeJson(const TypeData& t)
{
    Json g = Json::array();
    for (const auto& q : t.gammas) g.push_back(toJson(q));
    return {{"k", t.k}, {"m", t.m}, {"n", t.n}, {"gammas", g}};
}

std::string typeText(const TypeData& t)
{
    std::string s = "k = " + std::to_string(t.k) + ", m = " + std::to_string(t.m) + ", n = " + std::to_string(t.n);
    if (!t.gammas.empty()) {
        s += ", gammas =";
        for (const auto& q : t.gammas) s += " " + toString(q);
    }
    return s;
}

// ------------------------------------------------------------------ commands

Outcome runTables(const Options& o)
{
    const int hi = o.ellTo < 0 ? o.ell : o.ellTo;
    if (o.ell < 0 || hi < o.ell) throw ConfigError("bad --ell range");
    if (hi > o.maxOrder) throw ConfigError("ell exceeds the guard " + std::to_string(o.maxOrder));
    Outcome out;
    Json rows = Json::array();
    std::ostringstream ts;
    for (int ell = o.ell; ell <= hi; ++ell) {
        const OperatorReport r = operatorReport(ell);
        Json kernel = Json::array();
        for (const auto& v : r.kernelBasis) kernel.push_back(toJson(v));
        rows.push_back({{"ell", ell},
                        {"domainDim", r.domainDim},
                        {"imageDim", r.imageDim},
                        {"kernelDim", r.kernelDim},
                        {"kernel", kernel},
                        {"complement", monoJson(r.complementMonomials)}});
        ts << "ell = " << ell << "\n";
        ts << "  domain " << r.domainDim << ", image " << r.imageDim << ", kernel " << r.kernelDim << "\n";
        for (const auto& v : r.kernelBasis) ts << "  kernel: " << formatField(v) << "\n";
        if (ell >= 3) ts << "  complement: " << monoList(r.complementMonomials) << "\n";
    }
    out.text = ts.str();
    out.json = {{"command", "tables"}, {"rows", rows}};
    return out;
}

Outcome runNormalize(const Options& o, const std::string& src)
{
    const int L = checkedOrder(o, 8);
    const WeightedPoly F = parsePoly(src, kSurfaceVars).truncated(L);
    const TypeVerdict tv = finiteType(F, L);
    if (tv.type && !tv.type->regular())
        throw DomainError("surface has type k = " + std::to_string(tv.type->k) + " > 2; use normalize-singular");
    if (!tv.type) throw DomainError("no b x term: the surface is not regular");
    const PreliminaryResult pre = preliminaryReduce(F);
    NormalFormReport r;
    if (o.method == "algebraic")
        r = normalizeJet(pre.F);
    else if (o.method == "geometric")
        r = geometricNormalize(pre.F);
    else
        throw ConfigError("unknown method '" + o.method + "' (algebraic, geometric)");
    const PointMap total = compose(r.transform, pre.map, L);

    Outcome out;
    std::ostringstream ts;
    ts << "input: " << formatPoly(F) << "  [regular, order " << L << "]\n";
    ts << "preliminary: " << formatPoly(pre.F) << "\n";
    if (!pre.map.isIdentity()) ts << indent(formatMap(pre.map)) << "\n";
    ts << "normalized: " << formatPoly(r.normalized) << "\n";
    ts << "transform:\n" << indent(formatMap(r.transform)) << "\n";
    ts << eliminatedText(r.eliminatedByWeight);
    ts << conditionsText(r.conditions);
    if (o.method == "geometric") ts << "rounds: " << r.rounds << "\n";
    out.text = ts.str();
    out.json = {{"command", "normalize"},
                {"method", o.method},
                {"input", toJson(F)},
                {"preliminary", {{"surface", toJson(pre.F)}, {"map", toJson(pre.map)}}},
                {"normalized", toJson(r.normalized)},
                {"transform", toJson(r.transform)},
                {"total", toJson(total)},
                {"eliminated", eliminatedJson(r.eliminatedByWeight)},
                {"conditions", conditionsJson(r.conditions)}};
    return out;
}

Outcome runNormalizeSingular(const Options& o, const std::string& src)
{
    const WeightedPoly exact = parsePoly(src, kSurfaceVars);
    const TypeVerdict tv = finiteType(exact, o.order ? o.order : o.maxOrder);
    if (!tv.type) throw DomainError("type undetermined up to order " + std::to_string(tv.scannedTo));
    if (tv.type->regular()) throw DomainError("surface is regular (k = 2); use normalize");
    const int L = checkedOrder(o, tv.type->k + 6);
    const WeightedPoly F = exact.truncated(L);
    const SingularPreliminary pre = prelimReduceSingular(F);
    const SingularNormalReport r = normalizeSingularJet(pre.F);

    Outcome out;
    std::ostringstream ts;
    ts << "input: " << formatPoly(F) << "\n";
    ts << "type: " << typeText(r.type) << "\n";
    ts << "preliminary: " << formatPoly(pre.F) << "  [" << describe(pre.F.grading()) << ", order " << L << "]\n";
    if (!pre.map.isIdentity()) ts << indent(formatMap(pre.map)) << "\n";
    ts << "normalized: " << formatPoly(r.normalized) << "\n";
    ts << "transform:\n" << indent(formatMap(r.transform)) << "\n";
    ts << eliminatedText(r.eliminatedByWeight);
    ts << "normal: " << yesNo(r.check.normal) << "\n";
    out.text = ts.str();
    out.json = {{"command", "normalize-singular"},
                {"input", toJson(F)},
                {"type", typeJson(r.type)},
                {"preliminary", {{"surface", toJson(pre.F)}, {"map", toJson(pre.map)}}},
                {"normalized", toJson(r.normalized)},
                {"transform", toJson(r.transform)},
                {"eliminated", eliminatedJson(r.eliminatedByWeight)},
                {"normal", r.check.normal}};
    return out;
}

Outcome runType(const Options& o, const std::string& src)
{
    const int L = checkedOrder(o, o.maxOrder);
    const WeightedPoly F = parsePoly(src, kSurfaceVars).truncated(L);
    const TypeVerdict tv = finiteType(F, L);
    Outcome out;
    out.json = {{"command", "type"}, {"scannedTo", tv.scannedTo}};
    if (!tv.type) {
        out.code = 1;
        out.json["verdict"] = "undetermined";
        out.text = "undetermined: no mixed b^m x^n term up to order " + std::to_string(tv.scannedTo) + "\n";
        return out;
    }
    out.json["verdict"] = tv.type->regular() ? "regular" : "singular";
    out.json["type"] = typeJson(*tv.type);
    out.text = std::string(tv.type->regular() ? "regular" : "singular") + ": " + typeText(*tv.type) + "\n";
    return out;
}

Grading odeGrading(const Options& o, const char* fallback)
{
    const Grading g = parseGrading(o.grading.empty() ? fallback : o.grading);
    if (!(g == Grading::regular() || g == Grading::totalDegree()))
        throw ConfigError("the ODE bridge supports the regular and total gradings");
    return g;
}

Outcome runOde2Surf(const Options& o, const std::string& src)
{
    const Grading g = odeGrading(o, "total");
    const int L = checkedOrder(o, 8);
    const WeightedPoly B = parsePoly(src, kOdeVars, g);
    const WeightedPoly F = odeToSurface(B, L);
    Outcome out;
    out.text = "ode: y'' = " + formatPoly(B) + "\nsurface: y = " + formatPoly(F) + "  [" + describe(g) +
               ", order " + std::to_string(F.order()) + "]\n";
    out.json = {{"command", "ode2surf"}, {"ode", toJson(B)}, {"surface", toJson(F)}};
    return out;
}

Outcome runSurf2Ode(const Options& o, const std::string& src)
{
    const Grading g = odeGrading(o, "regular");
    const int L = checkedOrder(o, 8);
    const WeightedPoly F = parsePoly(src, kSurfaceVars, g).truncated(L);
    const WeightedPoly B = surfaceToOde(F);
    const OdeNormalReport n = checkOdeNormal(B);
    Outcome out;
    out.text = "surface: y = " + formatPoly(F) + "\node: y'' = " + formatPoly(B) + "  [" + describe(g) + ", order " +
               std::to_string(B.order()) + "]\n";
    Json off = Json::array();
    for (auto [i, j] : n.offending) off.push_back({i, j});
    out.json = {{"command", "surf2ode"}, {"surface", toJson(F)}, {"ode", toJson(B)}, {"odeNormal", n.normal}, {"offending", off}};
    return out;
}

Outcome runCheckNormal(const Options& o, const std::string& src)
{
    Outcome out;
    if (o.grading.empty() || o.grading == "regular") {
        const int L = checkedOrder(o, 8);
        const WeightedPoly F = parsePoly(src, kSurfaceVars).truncated(L);
        const NormalConditions c = checkNormalConditions(F);
        out.text = "normal: " + yesNo(c.all()) + "\n" + conditionsText(c);
        out.json = {{"command", "check-normal"}, {"grading", "regular"}, {"normal", c.all()}, {"conditions", conditionsJson(c)}};
        return out;
    }
    const Grading g = parseGrading(o.grading);
    if (g.typeK <= 2 || !(g == Grading::singular(g.typeK))) throw ConfigError("expected --grading singular:k with k > 2");
    const int L = checkedOrder(o, g.typeK + 6);
    const WeightedPoly F = parsePoly(src, kSurfaceVars, g).truncated(L);
    const TypeData t = readLeadingType(F);
    const SingularCheck c = checkSingularNormal(F, t);
    Json off = Json::object();
    std::string offText;
    for (const auto& [w, v] : c.offending) {
        off[std::to_string(w)] = monoJson(v);
        offText += "  weight " + std::to_string(w) + ": " + monoList(v) + "\n";
    }
    out.text = "normal: " + yesNo(c.normal) + "\nleading: " + yesNo(c.leading) + " (" + typeText(t) + ")\n" +
               (offText.empty() ? "" : "offending:\n" + offText);
    out.json = {{"command", "check-normal"}, {"grading", describe(g)}, {"normal", c.normal},
                {"leading", c.leading}, {"type", typeJson(t)}, {"offending", off}};
    return out;
}

Outcome runCheckOdeNormal(const Options& o, const std::string& src)
{
    const Grading g = odeGrading(o, "total");
    const WeightedPoly B = parsePoly(src, kOdeVars, g);
    const OdeNormalReport n = checkOdeNormal(B);
    Outcome out;
    Json off = Json::array();
    std::string offText;
    for (auto [i, j] : n.offending) {
        off.push_back({i, j});
        offText += (offText.empty() ? "" : ", ") + std::string("(") + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    out.text = "normal: " + yesNo(n.normal) + "\n" + (offText.empty() ? "" : "offending (x^i p^j): " + offText + "\n");
    out.json = {{"command", "check-ode-normal"}, {"normal", n.normal}, {"offending", off}};
    return out;
}

Outcome runAutos(const Options& o, const std::string& src)
{
    const WeightedPoly exact = parsePoly(src, kSurfaceVars);
    const TypeVerdict tv = finiteType(exact, o.order ? o.order : o.maxOrder);
    if (!tv.type) throw DomainError("type undetermined up to order " + std::to_string(tv.scannedTo));
    const int k = tv.type->k;
    const int L = checkedOrder(o, std::max(8, 3 * k));
    WeightedPoly F;
    if (k == 2) {
        F = exact.truncated(L);
        if (o.normalizeFirst) F = normalizeJet(preliminaryReduce(F).F).normalized;
    } else {
        F = exact.truncated(L);
        if (o.normalizeFirst)
            F = normalizeSingularJet(prelimReduceSingular(F).F).normalized;
        else
            F = F.regraded(Grading::singular(k), L);
    }
    const IsotropyReport r = isotropyReport(F, L);
    Outcome out;
    Json autos = Json::array();
    std::ostringstream ts;
    ts << "surface: y = " << formatPoly(F) << "  [" << describe(F.grading()) << ", order " << r.order << "]\n";
    ts << "verdict: " << isotropyName(r.verdict) << " (up to order " << r.order << ")\n";
    ts << "pattern: " << yesNo(r.pattern.withA) << " (constant coefficients: " << yesNo(r.pattern.strict) << ")\n";
    for (const auto& [name, v] : r.automorphisms) {
        autos.push_back({{"name", name}, {"field", toJson(v)}});
        ts << "  " << name << " = " << formatField(v) << "\n";
    }
    out.text = ts.str();
    out.json = {{"command", "autos"},
                {"surface", toJson(F)},
                {"verdict", isotropyName(r.verdict)},
                {"order", r.order},
                {"m", r.m},
                {"n", r.n},
                {"pattern", {{"withA", r.pattern.withA}, {"strict", r.pattern.strict},
                             {"offPattern", monoJson(r.pattern.offPattern)}}},
                {"automorphisms", autos}};
    return out;
}

Outcome dispatch(const Options& o, const std::string& src)
{
    if (o.command == "normalize") return runNormalize(o, src);
    if (o.command == "normalize-singular") return runNormalizeSingular(o, src);
    if (o.command == "type") return runType(o, src);
    if (o.command == "ode2surf") return runOde2Surf(o, src);
    if (o.command == "surf2ode") return runSurf2Ode(o, src);
    if (o.command == "check-normal") return runCheckNormal(o, src);
    if (o.command == "check-ode-normal") return runCheckOdeNormal(o, src);
    if (o.command == "autos") return runAutos(o, src);
    throw ConfigError("unknown command " + o.command);
}

Outcome guarded(const std::function<Outcome()>& f)
{
    Outcome out;
    try {
        out = f();
    } catch (const ParseError& e) {
        out.code = 2;
        out.error = std::string("parse error: ") + e.what();
    } catch (const ConfigError& e) {
        out.code = 2;
        out.error = e.what();
    } catch (const std::invalid_argument& e) {
        out.code = 2;
        out.error = e.what();
    } catch (const StructuralError& e) {
        out.code = 2;
        out.error = e.what();
    } catch (const DomainError& e) {
        out.code = 1;
        out.error = e.what();
    } catch (const std::exception& e) {
        out.code = 1;
        out.error = std::string("failed: ") + e.what();
    }
    return out;
}

std::string readFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void addInputOptions(CLI::App* sub, Options& o, bool withGrading = true)
{
    auto* e = sub->add_option("--expr,-e", o.expr, "polynomial given inline");
    auto* i = sub->add_option("--input,-i", o.inputs, "file(s) holding one polynomial each")->check(CLI::ExistingFile);
    e->excludes(i);
    sub->add_option("--order,-L", o.order, "truncation order");
    sub->add_flag("--json", o.json, "JSON output");
    if (withGrading) sub->add_option("--grading", o.grading, "regular, total or singular:k");
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    if (const char* env = std::getenv("PARACR_MAX_ORDER")) {
        try {
            o.maxOrder = std::stoi(env);
        } catch (const std::exception&) {
            std::cerr << "error: PARACR_MAX_ORDER is not an integer\n";
            return 2;
        }
    }

    CLI::App app{"paracr: normal forms of surface jets and second order ODEs"};
    app.require_subcommand(1);
    auto* tables = app.add_subcommand("tables", "kernel, image and complement of the linearized operator");
    tables->add_option("--ell", o.ell, "weight")->required();
    tables->add_option("--to", o.ellTo, "last weight of a range");
    tables->add_flag("--json", o.json, "JSON output");

    auto* normalize = app.add_subcommand("normalize", "regular normal form of a surface y = F(a,b,x)");
    addInputOptions(normalize, o, false);
    normalize->add_option("--method", o.method, "algebraic or geometric");
    auto* singular = app.add_subcommand("normalize-singular", "normal form of a surface of type k > 2");
    addInputOptions(singular, o, false);
    addInputOptions(app.add_subcommand("type", "finite type of a surface"), o, false);
    addInputOptions(app.add_subcommand("ode2surf", "solution surface of y'' = B(x,y,p)"), o);
    addInputOptions(app.add_subcommand("surf2ode", "ODE whose solutions are y = F(a,b,x)"), o);
    addInputOptions(app.add_subcommand("check-normal", "normal form conditions of a surface"), o);
    addInputOptions(app.add_subcommand("check-ode-normal", "normal form conditions of an ODE"), o);
    auto* autos = app.add_subcommand("autos", "isotropic infinitesimal automorphisms");
    addInputOptions(autos, o, false);
    autos->add_flag("--normalize", o.normalizeFirst, "normalize the surface first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    o.command = app.get_subcommands().front()->get_name();

    std::vector<Outcome> results;
    if (o.command == "tables") {
        results.push_back(guarded([&] { return runTables(o); }));
    } else {
        std::vector<std::string> labels, sources;
        if (!o.inputs.empty()) {
            labels = o.inputs;
        } else {
            labels.push_back("<expr>");
        }
        if (o.inputs.empty() && o.expr.empty()) {
            std::cerr << "error: give --expr or --input\n";
            return 2;
        }
        results.resize(labels.size());
        // Jobs are independent; each one buffers its own output.
        const long count = static_cast<long>(labels.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            results[idx] = guarded([&] {
                const std::string src = o.inputs.empty() ? o.expr : readFile(o.inputs[idx]);
                return dispatch(o, src);
            });
        }
        if (labels.size() > 1) {
            for (std::size_t i = 0; i < labels.size(); ++i) {
                results[i].json = {{"input", labels[i]}, {"result", results[i].json}};
                if (!results[i].error.empty()) results[i].json["error"] = results[i].error;
                results[i].text = "== " + labels[i] + "\n" + results[i].text;
            }
        }
    }

    int code = 0;
    if (o.json) {
        Json doc;
        if (results.size() == 1) {
            doc = results[0].json;
            if (!results[0].error.empty()) doc = {{"command", o.command}, {"error", results[0].error}};
        } else {
            doc = Json::array();
            for (const auto& r : results) doc.push_back(r.json);
        }
        std::cout << doc.dump(2) << "\n";
    }
    for (const auto& r : results) {
        if (!o.json) std::cout << r.text;
        if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
        code = std::max(code, r.code);
    }
    return code;
}
