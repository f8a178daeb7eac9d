#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "motivic/parse.hpp"

namespace motivic {

inline constexpr std::string_view kSchemaVersion = "motivic-kit/v1";

enum class Context { zeta, volume, stringy, stringy_zeta, nc_integral, birational_identity };

inline std::string to_string(Context c) {
  switch (c) {
    case Context::zeta: return "zeta";
    case Context::volume: return "volume";
    case Context::stringy: return "stringy";
    case Context::stringy_zeta: return "stringy-zeta";
    case Context::nc_integral: return "nc-integral";
    case Context::birational_identity: return "birational-identity";
  }
  return "?";
}

inline Context parse_context(std::string_view s) {
  for (Context c : {Context::zeta, Context::volume, Context::stringy, Context::stringy_zeta, Context::nc_integral,
                    Context::birational_identity})
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::SchemaError, "unknown context '" + std::string(s) + "'");
}

struct ComponentRecord {
  std::string id;
  std::optional<Rational> N;
  std::optional<Rational> nu;
  std::optional<Rational> a;
};

/// One stratum E_I°. `symbol` names an additive symbolic part of chi (for
/// instance the Euler characteristic of the complement of the singular point)
/// that is carried through evaluation untouched.
struct StratumRecord {
  std::vector<std::string> subset;  // sorted
  Rational chi;
  std::optional<MPoly> hodge;
  std::optional<MPoly> classL;
  std::optional<std::string> symbol;
};

struct ResolutionData {
  std::string name;
  std::string description;
  Context context = Context::zeta;
  int ambient_dim = 0;
  std::vector<ComponentRecord> components;
  std::vector<StratumRecord> strata;
  std::optional<std::vector<Rational>> eigenvalues;  // monodromy exponents q, eigenvalue e^(2 pi i q)
  nlohmann::json expect = nlohmann::json::object();

  const ComponentRecord& component(std::string_view id) const {
    for (const auto& c : components)
      if (c.id == id) return c;
    throw Error(ErrorCode::SchemaError, "unknown component id '" + std::string(id) + "'");
  }

  const StratumRecord* stratum(const std::vector<std::string>& subset) const {
    auto key = subset;
    std::sort(key.begin(), key.end());
    for (const auto& s : strata)
      if (s.subset == key) return &s;
    return nullptr;
  }
};

enum class SingularityClass { terminal, canonical, log_terminal, strictly_log_canonical, not_log_canonical };

inline std::string to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::terminal: return "terminal";
    case SingularityClass::canonical: return "canonical";
    case SingularityClass::log_terminal: return "log-terminal";
    case SingularityClass::strictly_log_canonical: return "strictly-log-canonical";
    case SingularityClass::not_log_canonical: return "not-log-canonical";
  }
  return "?";
}

/// Strictest class allowed by every log discrepancy; no divisors means terminal.
inline SingularityClass classify(const std::vector<Rational>& a_values) {
  if (a_values.empty()) return SingularityClass::terminal;
  Rational m = *std::min_element(a_values.begin(), a_values.end());
  if (m > 1) return SingularityClass::terminal;
  if (m == 1) return SingularityClass::canonical;
  if (m > 0) return SingularityClass::log_terminal;
  if (m == 0) return SingularityClass::strictly_log_canonical;
  return SingularityClass::not_log_canonical;
}

/// True iff the stratum Euler characteristics add up to total_chi. Symbolic
/// parts are ignored.
inline bool check_additivity(const ResolutionData& data, const Rational& total_chi) {
  if (!data.stratum({})) throw Error(ErrorCode::MissingEmptyStratum, "no stratum for the empty subset");
  Rational sum = 0;
  for (const auto& s : data.strata) sum += s.chi;
  return sum == total_chi;
}

namespace detail {

inline Rational json_rational(const nlohmann::json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::SchemaError, what + ": " + e.what());
    }
  }
  throw Error(ErrorCode::SchemaError, what + ": expected integer or \"p/q\" string");
}

inline MPoly json_poly(const nlohmann::json& j, const std::string& what,
                       std::initializer_list<std::string_view> allowed) {
  if (!j.is_string()) throw Error(ErrorCode::SchemaError, what + ": expected polynomial string");
  MPoly p;
  try {
    p = parse_poly(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaError, what + ": " + e.what());
  }
  for (const auto& v : p.variables())
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
      throw Error(ErrorCode::SchemaError, what + ": unexpected variable " + v);
  return p;
}

inline std::string rational_text(const Rational& r) { return to_string(r); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

}  // namespace detail

/// Checks the document invariants and fills derived values (chi from classL
/// or hodge, a = nu + N in the stringy-zeta context).
inline void validate(ResolutionData& data) {
  using detail::require;
  std::set<std::string> ids;
  for (auto& c : data.components) {
    require(!c.id.empty(), ErrorCode::SchemaError, "component with empty id");
    require(ids.insert(c.id).second, ErrorCode::SchemaError, "duplicate component id '" + c.id + "'");
    const std::string where = "component " + c.id;
    auto need = [&](const std::optional<Rational>& v, const char* field) {
      require(v.has_value(), ErrorCode::MissingMultiplicity,
              where + " lacks " + field + " required by context " + to_string(data.context));
    };
    auto positive_integer = [&](const std::optional<Rational>& v, const char* field) {
      require(is_integer(*v) && *v >= 1, ErrorCode::SchemaError, where + ": " + field + " must be an integer >= 1");
    };
    switch (data.context) {
      case Context::zeta:
        need(c.N, "N");
        need(c.nu, "nu");
        positive_integer(c.N, "N");
        positive_integer(c.nu, "nu");
        break;
      case Context::nc_integral:
        need(c.N, "N");
        require(is_integer(*c.N) && *c.N >= 0, ErrorCode::SchemaError, where + ": N must be an integer >= 0");
        break;
      case Context::volume:
      case Context::birational_identity:
        need(c.nu, "nu");
        positive_integer(c.nu, "nu");
        break;
      case Context::stringy:
        need(c.a, "a");
        break;
      case Context::stringy_zeta:
        need(c.nu, "nu");
        need(c.N, "N");
        require(!(*c.nu == 0 && *c.N == 0), ErrorCode::ForbiddenZeroPair, where + " has (nu, N) = (0, 0)");
        require(*c.nu >= 0, ErrorCode::SchemaError, where + ": nu must be >= 0");
        require(*c.N <= 0, ErrorCode::SchemaError, where + ": N must be <= 0");
        if (c.a)
          require(*c.a == *c.nu + *c.N, ErrorCode::InconsistentStratumData, where + ": a != nu + N");
        else
          c.a = *c.nu + *c.N;
        break;
    }
  }
  std::set<std::vector<std::string>> subsets;
  for (auto& s : data.strata) {
    std::sort(s.subset.begin(), s.subset.end());
    std::string name = "{";
    for (const auto& id : s.subset) name += (name.size() > 1 ? "," : "") + id;
    name += "}";
    for (const auto& id : s.subset)
      require(ids.count(id) == 1, ErrorCode::SchemaError, "stratum " + name + " refers to unknown component '" + id + "'");
    require(std::adjacent_find(s.subset.begin(), s.subset.end()) == s.subset.end(), ErrorCode::SchemaError,
            "stratum " + name + " repeats a component");
    require(subsets.insert(s.subset).second, ErrorCode::SchemaError, "duplicate stratum " + name);
    require(!s.symbol || s.subset.empty(), ErrorCode::SchemaError,
            "stratum " + name + ": a symbolic chi is only allowed on the empty subset");
    if (s.classL && s.hodge)
      require(s.classL->substitute("L", MPoly::var("u") * MPoly::var("v")) == *s.hodge,
              ErrorCode::InconsistentStratumData, "stratum " + name + ": hodge is not classL with L -> uv");
    if (s.classL)
      require(s.chi == s.classL->evaluate({{"L", Rational(1)}}), ErrorCode::InconsistentStratumData,
              "stratum " + name + ": chi != classL(1)");
    if (s.hodge)
      require(s.chi == s.hodge->evaluate({{"u", Rational(1)}, {"v", Rational(1)}}),
              ErrorCode::InconsistentStratumData, "stratum " + name + ": chi != hodge(1, 1)");
  }
}

/// Generated document for the Fermat hypersurface x1^k + ... + x_{d+1}^k = 0:
/// one exceptional divisor E (the projective Fermat hypersurface) after
/// blowing up the origin, strata Y \ E of class (L-1)[E] and E itself.
inline ResolutionData fermat_resolution(int d, int k, Context context) {
  if (d < 1 || k < 1) throw Error(ErrorCode::InvalidArgument, "fermat family needs d >= 1 and k >= 1");
  const MPoly L = MPoly::var("L");
  std::optional<MPoly> cls;
  if (k == 1) {
    cls = MPoly(0);
    for (int i = 0; i < d; ++i) *cls += L.pow(static_cast<unsigned>(i));  // P^(d-1)
  } else if (d == 1) {
    cls = MPoly(k);  // k points on P^1
  } else if (k == 2) {
    int n = d - 1;  // smooth quadric of dimension n
    cls = MPoly(0);
    for (int i = 0; i <= n; ++i) *cls += L.pow(static_cast<unsigned>(i));
    if (n % 2 == 0) *cls += L.pow(static_cast<unsigned>(n / 2));
  } else if (d == 3 && k == 3) {
    cls = L.pow(2) + MPoly(7) * L + MPoly(1);  // cubic surface
  }
  // chi of a smooth degree-k hypersurface in P^d
  Rational chi = (Rational(boost::multiprecision::pow(Integer(1 - k), static_cast<unsigned>(d + 1))) - 1) / k + d + 1;
  std::optional<MPoly> hodge;
  if (cls) {
    hodge = cls->substitute("L", MPoly::var("u") * MPoly::var("v"));
  } else if (d == 2) {
    int g = (k - 1) * (k - 2) / 2;  // plane curve genus
    hodge = MPoly(1) - MPoly(g) * MPoly::var("u") - MPoly(g) * MPoly::var("v") + MPoly::var("u") * MPoly::var("v");
  }

  ResolutionData data;
  data.name = "fermat-d" + std::to_string(d) + "-k" + std::to_string(k);
  data.description = "x1^k + ... + x_{d+1}^k = 0 with d = " + std::to_string(d) + ", k = " + std::to_string(k);
  data.context = context;
  data.ambient_dim = d;
  ComponentRecord e{"E", {}, {}, {}};
  switch (context) {
    case Context::stringy: e.a = Rational(d + 1 - k); break;
    case Context::volume: e.nu = Rational(d); break;
    default: throw Error(ErrorCode::InvalidArgument, "fermat family supports the stringy and volume contexts");
  }
  data.components.push_back(e);
  StratumRecord open{{}, Rational(0), {}, {}, {}};
  StratumRecord ex{{"E"}, chi, hodge, cls, {}};
  if (cls) open.classL = (L - MPoly(1)) * *cls;
  if (hodge) open.hodge = (MPoly::var("u") * MPoly::var("v") - MPoly(1)) * *hodge;
  data.strata = {open, ex};
  validate(data);
  return data;
}

/// Parses and validates a document.
inline ResolutionData load_resolution_doc(const nlohmann::json& doc) {
  using detail::require;
  require(doc.is_object(), ErrorCode::SchemaError, "document must be an object");
  if (doc.contains("schema"))
    require(doc["schema"] == kSchemaVersion, ErrorCode::SchemaError,
            "unsupported schema " + doc["schema"].dump() + ", expected " + std::string(kSchemaVersion));
  require(doc.contains("context") && doc["context"].is_string(), ErrorCode::SchemaError, "missing \"context\"");
  Context ctx = parse_context(doc["context"].get<std::string>());

  ResolutionData data;
  if (doc.contains("generator")) {
    const auto& g = doc["generator"];
    require(g.is_object() && g.value("family", "") == "fermat", ErrorCode::SchemaError,
            "unknown generator (only \"fermat\" is supported)");
    require(g.contains("d") && g["d"].is_number_integer() && g.contains("k") && g["k"].is_number_integer(),
            ErrorCode::SchemaError, "fermat generator needs integer d and k");
    data = fermat_resolution(g["d"].get<int>(), g["k"].get<int>(), ctx);
  } else {
    data.context = ctx;
    require(doc.contains("ambient_dim") && doc["ambient_dim"].is_number_integer() && doc["ambient_dim"].get<int>() >= 1,
            ErrorCode::SchemaError, "\"ambient_dim\" must be a positive integer");
    data.ambient_dim = doc["ambient_dim"].get<int>();
    require(doc.contains("components") && doc["components"].is_array(), ErrorCode::SchemaError,
            "missing \"components\" array");
    require(doc.contains("strata") && doc["strata"].is_array(), ErrorCode::SchemaError, "missing \"strata\" array");
    for (const auto& c : doc["components"]) {
      require(c.is_object() && c.contains("id") && c["id"].is_string(), ErrorCode::SchemaError,
              "component without string \"id\"");
      ComponentRecord rec{c["id"].get<std::string>(), {}, {}, {}};
      const std::string where = "component " + rec.id;
      if (c.contains("N")) rec.N = detail::json_rational(c["N"], where + " N");
      if (c.contains("nu")) rec.nu = detail::json_rational(c["nu"], where + " nu");
      if (c.contains("a")) rec.a = detail::json_rational(c["a"], where + " a");
      data.components.push_back(std::move(rec));
    }
    for (const auto& s : doc["strata"]) {
      require(s.is_object() && s.contains("subset") && s["subset"].is_array(), ErrorCode::SchemaError,
              "stratum without \"subset\" array");
      StratumRecord rec;
      for (const auto& id : s["subset"]) {
        require(id.is_string(), ErrorCode::SchemaError, "stratum subset entries must be strings");
        rec.subset.push_back(id.get<std::string>());
      }
      std::string where = "stratum " + s["subset"].dump();
      if (s.contains("classL")) rec.classL = detail::json_poly(s["classL"], where + " classL", {"L"});
      if (s.contains("hodge")) rec.hodge = detail::json_poly(s["hodge"], where + " hodge", {"u", "v"});
      if (s.contains("symbol")) {
        require(s["symbol"].is_string() && !s["symbol"].get<std::string>().empty(), ErrorCode::SchemaError,
                where + " symbol must be a non-empty string");
        rec.symbol = s["symbol"].get<std::string>();
      }
      if (s.contains("chi"))
        rec.chi = detail::json_rational(s["chi"], where + " chi");
      else if (rec.classL)
        rec.chi = rec.classL->evaluate({{"L", Rational(1)}});
      else if (rec.hodge)
        rec.chi = rec.hodge->evaluate({{"u", Rational(1)}, {"v", Rational(1)}});
      else if (!rec.symbol)
        throw Error(ErrorCode::SchemaError, where + " needs one of chi, classL, hodge, symbol");
      data.strata.push_back(std::move(rec));
    }
  }
  data.name = doc.value("name", data.name);
  data.description = doc.value("description", data.description);
  if (doc.contains("eigenvalues")) {
    require(doc["eigenvalues"].is_array(), ErrorCode::SchemaError, "\"eigenvalues\" must be an array");
    std::vector<Rational> ev;
    for (const auto& q : doc["eigenvalues"]) ev.push_back(frac(detail::json_rational(q, "eigenvalue")));
    data.eigenvalues = std::move(ev);
  }
  if (doc.contains("expect")) data.expect = doc["expect"];
  validate(data);
  return data;
}

inline ResolutionData load_resolution(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed document: ") + e.what());
  }
  return load_resolution_doc(doc);
}

inline nlohmann::json serialize(const ResolutionData& data) {
  nlohmann::json doc = nlohmann::json::object();
  doc["schema"] = kSchemaVersion;
  if (!data.name.empty()) doc["name"] = data.name;
  if (!data.description.empty()) doc["description"] = data.description;
  doc["context"] = to_string(data.context);
  doc["ambient_dim"] = data.ambient_dim;
  doc["components"] = nlohmann::json::array();
  for (const auto& c : data.components) {
    nlohmann::json j = {{"id", c.id}};
    if (c.N) j["N"] = detail::rational_text(*c.N);
    if (c.nu) j["nu"] = detail::rational_text(*c.nu);
    if (c.a) j["a"] = detail::rational_text(*c.a);
    doc["components"].push_back(j);
  }
  doc["strata"] = nlohmann::json::array();
  for (const auto& s : data.strata) {
    nlohmann::json j = {{"subset", s.subset}, {"chi", detail::rational_text(s.chi)}};
    if (s.hodge) j["hodge"] = s.hodge->to_string();
    if (s.classL) j["classL"] = s.classL->to_string();
    if (s.symbol) j["symbol"] = *s.symbol;
    doc["strata"].push_back(j);
  }
  if (data.eigenvalues) {
    doc["eigenvalues"] = nlohmann::json::array();
    for (const auto& q : *data.eigenvalues) doc["eigenvalues"].push_back(detail::rational_text(q));
  }
  if (!data.expect.empty()) doc["expect"] = data.expect;
  return doc;
}

/// Log discrepancies of all components that carry one.
inline std::vector<Rational> log_discrepancies(const ResolutionData& data) {
  std::vector<Rational> out;
  for (const auto& c : data.components)
    if (c.a) out.push_back(*c.a);
  return out;
}

}  // namespace motivic
