#include "crgauss/map_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace crgauss {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw SchemaError(field + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
    return *it;
}

int require_int(const json& obj, const std::string& key) {
    const json& v = require(obj, key, "");
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<int>();
}

mpq_class parse_coeff_part(const json& v, const std::string& field) {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (!v.is_string()) fail(field, "expected a rational string \"p/q\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
        fail(field, e.what());
    }
}

MPoly parse_terms(const json& arr, VarAlphabet a, const std::string& field) {
    if (!arr.is_array()) fail(field, "expected an array of terms");
    MPoly p(a);
    for (std::size_t t = 0; t < arr.size(); ++t) {
        const std::string tf = field + "[" + std::to_string(t) + "]";
        const json& term = arr[t];
        if (!term.is_object()) fail(tf, "expected an object");
        const json& coeff = require(term, "coeff", tf);
        if (!coeff.is_array() || coeff.size() != 2) fail(tf + ".coeff", "expected [re, im]");
        const ExactComplex c(parse_coeff_part(coeff[0], tf + ".coeff[0]"),
                             parse_coeff_part(coeff[1], tf + ".coeff[1]"));
        const json& exps = require(term, "exps", tf);
        if (!exps.is_array() || static_cast<int>(exps.size()) != a.n_holo())
            fail(tf + ".exps", "expected " + std::to_string(a.n_holo()) + " exponents");
        Exponent e = zero_exponent();
        for (int s = 0; s < a.n_holo(); ++s) {
            if (!exps[s].is_number_integer() || exps[s].get<long>() < 0 || exps[s].get<long>() > 255)
                fail(tf + ".exps[" + std::to_string(s) + "]", "expected an exponent in 0..255");
            e[s] = static_cast<std::uint8_t>(exps[s].get<int>());
        }
        p.add_term(e, c);
    }
    return p;
}

json terms_json(const MPoly& p) {
    json arr = json::array();
    const int slots = p.alphabet().n_holo();
    for (const auto& [e, c] : p.terms()) {
        json exps = json::array();
        for (int s = 0; s < slots; ++s) exps.push_back(int(e[s]));
        arr.push_back({{"coeff", {rational_string(c.re()), rational_string(c.im())}}, {"exps", exps}});
    }
    return arr;
}

}  // namespace

CRMap parse_map(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("(root)", "expected an object");
    const json& model_v = require(j, "model", "");
    if (!model_v.is_string()) fail("model", "expected \"heisenberg\" or \"ball\"");
    Model model;
    if (model_v == "heisenberg")
        model = Model::heisenberg;
    else if (model_v == "ball")
        model = Model::ball;
    else
        fail("model", "expected \"heisenberg\" or \"ball\"");
    const int n = require_int(j, "n"), N = require_int(j, "N");
    if (n < 2 || n > 10) fail("n", "expected 2 <= n <= 10");
    if (N < n) fail("N", "expected N >= n");
    const json& comps = require(j, "components", "");
    if (!comps.is_array() || static_cast<int>(comps.size()) != N)
        fail("components", "expected " + std::to_string(N) + " components");
    const VarAlphabet a(n - 1, false);
    std::vector<RFunc> out;
    for (int k = 0; k < N; ++k) {
        const std::string cf = "components[" + std::to_string(k) + "]";
        const json& c = comps[k];
        const char* expected = k < n - 1 ? "f" : (k < N - 1 ? "phi" : "g");
        const json& role = require(c, "role", cf);
        if (!role.is_string() || role.get<std::string>() != expected)
            fail(cf + ".role", std::string("expected \"") + expected + "\"");
        MPoly num = parse_terms(require(c, "num", cf), a, cf + ".num");
        MPoly den = MPoly::constant(a, 1);
        if (auto it = c.find("den"); it != c.end()) den = parse_terms(*it, a, cf + ".den");
        if (den.constant_term().is_zero()) fail(cf + ".den", "denominator vanishes at origin");
        out.emplace_back(std::move(num), std::move(den));
    }
    try {
        return CRMap(n, N, model, std::move(out));
    } catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
}

std::string map_to_json(const CRMap& F) {
    json j;
    j["model"] = to_string(F.model());
    j["n"] = F.n();
    j["N"] = F.N();
    json comps = json::array();
    for (int k = 0; k < F.N(); ++k) {
        const RFunc& r = F.components()[k];
        json c;
        c["role"] = k < F.n() - 1 ? "f" : (k < F.N() - 1 ? "phi" : "g");
        c["num"] = terms_json(r.num());
        if (!r.is_polynomial()) c["den"] = terms_json(r.den());
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    return j.dump(2) + "\n";
}

CRMap load_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open map file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_map(ss.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed for " + path.string());
}

void save_map(const CRMap& F, const std::filesystem::path& path) { write_text(path, map_to_json(F)); }

}  // namespace crgauss
