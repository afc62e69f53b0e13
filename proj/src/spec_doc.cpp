#include "transurf/spec_doc.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "format.hpp"
#include "parallel.hpp"
#include "json.hpp"
#include "transurf/errors.hpp"

namespace transurf {

using nlohmann::json;

namespace {

constexpr int kEvaluabilityProbes = 257;

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) throw SpecError("unknown key '" + key + "'");
  }
}

const json& require(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw SpecError("missing key '" + key + "'");
  return doc.at(key);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw SpecError("'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SpecError("'" + key + "' must be finite");
  return d;
}

Interval interval(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) throw SpecError("'" + key + "' must be [lo, hi]");
  Interval I{number(v[0], key), number(v[1], key)};
  if (!(I.lo < I.hi)) throw SpecError("'" + key + "' must satisfy lo < hi");
  return I;
}

Rect domain_of(const json& v) {
  if (!v.is_array() || v.size() != 2) throw SpecError("'domain' must be [[s0,s1],[t0,t1]]");
  return {interval(v[0], "domain"), interval(v[1], "domain")};
}

Expr expression(const json& doc, const std::string& key, VarSet vars) {
  const json& v = require(doc, key);
  if (!v.is_string()) throw SpecError("'" + key + "' must be an S-expression string");
  try {
    return parse_expr(v.get<std::string>(), vars);
  } catch (const ParseError& e) {
    throw ParseError("in '" + key + "': " + e.message(), e.position());
  }
}

// The declared validity interval must actually be evaluable; probe it.
SmoothFn1 function1(const json& doc, const std::string& key, Interval dom) {
  SmoothFn1 fn{expression(doc, key, VarSet::Univariate), dom};
  for (int i = 0; i < kEvaluabilityProbes; ++i) {
    const double x = dom.lo + dom.width() * i / (kEvaluabilityProbes - 1);
    try {
      (void)fn.jet(x);
    } catch (const DomainError& e) {
      throw SpecError("'" + key + "' is not evaluable on its domain [" +
                      detail::format_shortest(dom.lo) + ", " + detail::format_shortest(dom.hi) +
                      "]: " + e.what() + " at " + detail::format_shortest(x));
    }
  }
  return fn;
}

Curve3 curve(const json& doc, const std::string& key, Interval dom) {
  const json& v = require(doc, key);
  if (!v.is_array() || v.size() != 3) throw SpecError("'" + key + "' must be three expressions");
  json wrapped = {{key + "[0]", v[0]}, {key + "[1]", v[1]}, {key + "[2]", v[2]}};
  return {function1(wrapped, key + "[0]", dom), function1(wrapped, key + "[1]", dom),
          function1(wrapped, key + "[2]", dom)};
}

Metric metric_of(const json& doc, Metric fallback) {
  if (!doc.contains("metric")) return fallback;
  const json& v = doc.at("metric");
  if (v == "euclidean") return Metric::euclidean();
  if (v == "lorentzian") return Metric::lorentzian();
  throw SpecError("'metric' must be \"euclidean\" or \"lorentzian\"");
}

Surface parse_family(const json& doc) {
  reject_unknown_keys(doc, {"kind", "metric", "family", "params", "domain"});
  const json& name = require(doc, "family");
  if (!name.is_string()) throw SpecError("'family' must be a string");
  const auto fam = family_from_id(name.get<std::string>());
  if (!fam) throw SpecError("unknown family '" + name.get<std::string>() + "'");
  FamilySpec spec{*fam, {}, std::nullopt};
  if (doc.contains("params")) {
    const json& p = doc.at("params");
    if (!p.is_object()) throw SpecError("'params' must be an object");
    for (const auto& [k, v] : p.items()) spec.params[k] = number(v, "params." + k);
  }
  if (doc.contains("domain")) spec.domain = domain_of(doc.at("domain"));
  return make_family(spec);
}

Surface parse_translation(const json& doc, const Rect& dom) {
  if (doc.contains("alpha") || doc.contains("beta")) {
    reject_unknown_keys(doc, {"kind", "metric", "domain", "alpha", "beta"});
    return Surface(Translation{curve(doc, "alpha", dom.s), curve(doc, "beta", dom.t)}, dom);
  }
  reject_unknown_keys(doc, {"kind", "metric", "domain", "f1", "f2", "g1", "g2"});
  const TranslationNormalForm nf{function1(doc, "f1", dom.s), function1(doc, "f2", dom.s),
                                 function1(doc, "g1", dom.t), function1(doc, "g2", dom.t)};
  return Surface(make_translation(nf), dom);
}

Surface parse_homothetical(const json& doc, const Rect& dom, const Metric& M) {
  reject_unknown_keys(doc, {"kind", "metric", "domain", "f", "g", "axis"});
  GraphAxis axis = GraphAxis::Z;
  if (doc.contains("axis")) {
    const json& a = doc.at("axis");
    if (a == "z") {
      axis = GraphAxis::Z;
    } else if (a == "x") {
      axis = GraphAxis::X;
    } else {
      throw SpecError("'axis' must be \"z\" or \"x\"");
    }
  }
  CausalRequirement causal = CausalRequirement::Any;
  if (M.signature == Signature::Lorentzian) {
    causal = axis == GraphAxis::Z ? CausalRequirement::Spacelike : CausalRequirement::Timelike;
  }
  return Surface(HomotheticalGraph{function1(doc, "f", dom.s), function1(doc, "g", dom.t), axis},
                 dom, causal);
}

Surface parse_generic(const json& doc, const Rect& dom) {
  reject_unknown_keys(doc, {"kind", "metric", "domain", "X"});
  const json& v = require(doc, "X");
  if (!v.is_array() || v.size() != 3) throw SpecError("'X' must be three expressions");
  std::array<Expr, 3> X{Expr::constant(0), Expr::constant(0), Expr::constant(0)};
  for (int i = 0; i < 3; ++i) {
    const std::string key = "X[" + std::to_string(i) + "]";
    json wrapped = {{key, v[i]}};
    X[i] = expression(wrapped, key, VarSet::Bivariate);
    constexpr int n = 33;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const std::array<double, 2> st{dom.s.lo + dom.s.width() * a / (n - 1),
                                       dom.t.lo + dom.t.width() * b / (n - 1)};
        try {
          (void)X[i].eval<double>(st);
        } catch (const DomainError& e) {
          throw SpecError("'" + key + "' is not evaluable on the domain: " + e.what());
        }
      }
    }
  }
  return Surface(GenericParametric{X}, dom);
}

Surface parse_cylindrical(const json& doc, const Rect& dom) {
  reject_unknown_keys(doc, {"kind", "metric", "domain", "base", "direction"});
  const json& d = require(doc, "direction");
  if (!d.is_array() || d.size() != 3) throw SpecError("'direction' must be a 3-vector");
  const Vec3 dir{number(d[0], "direction"), number(d[1], "direction"), number(d[2], "direction")};
  return Surface(Cylindrical{curve(doc, "base", dom.s), dir}, dom);
}

json domain_json(const Rect& r) {
  return json::array({json::array({r.s.lo, r.s.hi}), json::array({r.t.lo, r.t.hi})});
}

json curve_json(const Curve3& c) {
  return json::array({to_sexpr(c.x.expr), to_sexpr(c.y.expr), to_sexpr(c.z.expr)});
}

json report_json(const ConstancyReport& r) {
  json j;
  j["quantity"] = to_string(r.quantity);
  j["mean"] = r.mean;
  j["max_abs_dev"] = r.max_abs_dev;
  j["expected"] = r.expected ? json(*r.expected) : json(nullptr);
  j["tol"] = r.tol;
  j["verdict"] = to_string(r.verdict);
  j["n_samples"] = r.n_samples;
  j["skipped_degenerate"] = r.skipped_degenerate;
  return j;
}

}  // namespace

ParsedSpec parse_surface_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw SpecError("spec document must be a JSON object");
  const json& kind = require(doc, "kind");
  if (!kind.is_string()) throw SpecError("'kind' must be a string");
  const std::string k = kind.get<std::string>();

  if (k == "family") {
    Surface S = parse_family(doc);
    const auto fam = *family_from_id(doc.at("family").get<std::string>());
    const Metric M = metric_of(doc, family_metric(fam));
    return {std::move(S), M, doc.dump()};
  }
  const Metric M = metric_of(doc, Metric::euclidean());
  if (k != "translation" && k != "homothetical" && k != "generic" && k != "cylindrical") {
    throw SpecError("unknown kind '" + k + "'");
  }
  const Rect dom = domain_of(require(doc, "domain"));
  if (k == "translation") return {parse_translation(doc, dom), M, doc.dump()};
  if (k == "homothetical") return {parse_homothetical(doc, dom, M), M, doc.dump()};
  if (k == "generic") return {parse_generic(doc, dom), M, doc.dump()};
  return {parse_cylindrical(doc, dom), M, doc.dump()};
}

std::string serialize_surface_spec(const Surface& S, const Metric& M) {
  json doc;
  doc["metric"] = M.signature == Signature::Euclidean ? "euclidean" : "lorentzian";
  doc["domain"] = domain_json(S.domain());
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Translation>) {
          doc["kind"] = "translation";
          if (const auto nf = normal_form(sh)) {
            doc["f1"] = to_sexpr(nf->f1.expr);
            doc["f2"] = to_sexpr(nf->f2.expr);
            doc["g1"] = to_sexpr(nf->g1.expr);
            doc["g2"] = to_sexpr(nf->g2.expr);
          } else {
            doc["alpha"] = curve_json(sh.alpha);
            doc["beta"] = curve_json(sh.beta);
          }
        } else if constexpr (std::is_same_v<T, HomotheticalGraph>) {
          doc["kind"] = "homothetical";
          doc["f"] = to_sexpr(sh.f.expr);
          doc["g"] = to_sexpr(sh.g.expr);
          doc["axis"] = sh.axis == GraphAxis::Z ? "z" : "x";
        } else if constexpr (std::is_same_v<T, GenericParametric>) {
          doc["kind"] = "generic";
          doc["X"] = json::array({to_sexpr(sh.X[0], VarSet::Bivariate),
                                  to_sexpr(sh.X[1], VarSet::Bivariate),
                                  to_sexpr(sh.X[2], VarSet::Bivariate)});
        } else {
          doc["kind"] = "cylindrical";
          doc["base"] = curve_json(sh.base);
          doc["direction"] = json::array({sh.direction[0], sh.direction[1], sh.direction[2]});
        }
      },
      S.shape());
  return doc.dump();
}

std::string spec_digest(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::pair<int, int> parse_grid_counts(std::string_view text) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) throw SpecError("grid must be NSxNT, got '" + std::string(text) + "'");
  int ns = 0, nt = 0;
  const auto a = std::from_chars(text.data(), text.data() + x, ns);
  const auto b = std::from_chars(text.data() + x + 1, text.data() + text.size(), nt);
  if (a.ec != std::errc() || a.ptr != text.data() + x || b.ec != std::errc() ||
      b.ptr != text.data() + text.size()) {
    throw SpecError("grid must be NSxNT, got '" + std::string(text) + "'");
  }
  if (ns < 2 || nt < 2) throw SpecError("grid counts must be >= 2");
  return {ns, nt};
}

std::string obj_text(const Surface& S, const Metric& M, const GridSpec& grid, unsigned threads) {
  validate_grid(grid, S);
  std::vector<std::string> vertices(grid.nodes());
  std::vector<std::string> failures(grid.nodes());
  detail::parallel_for(grid.nodes(), threads, [&](std::size_t k) {
    const int i = static_cast<int>(k) / grid.nt, j = static_cast<int>(k) % grid.nt;
    const double s = grid.s_at(i), t = grid.t_at(j);
    try {
      (void)fundamental_forms(S, M, s, t);
    } catch (const Error& e) {
      failures[k] = "cannot export: node (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") at (s, t) = (" + detail::format_shortest(s) + ", " +
                    detail::format_shortest(t) + "): " + e.what();
      return;
    }
    const Vec3 p = S.embed(s, t);
    char line[128];
    std::snprintf(line, sizeof line, "v %.9g %.9g %.9g\n", p[0], p[1], p[2]);
    vertices[k] = line;
  });
  std::string out;
  char line[128];
  for (std::size_t k = 0; k < grid.nodes(); ++k) {
    if (!failures[k].empty()) throw DegenerateError(failures[k]);
    out += vertices[k];
  }
  auto idx = [&](int i, int j) { return i * grid.nt + j + 1; };
  for (int i = 0; i + 1 < grid.ns; ++i) {
    for (int j = 0; j + 1 < grid.nt; ++j) {
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      std::snprintf(line, sizeof line, "f %d %d %d\nf %d %d %d\n", a, b, c, a, c, d);
      out += line;
    }
  }
  return out;
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!f) throw IoError("failed writing '" + path + "'");
}

void export_obj(const Surface& S, const Metric& M, const GridSpec& grid, const std::string& path,
                unsigned threads) {
  write_text_file(path, obj_text(S, M, grid, threads));
}

std::string samples_csv(const SampleSet& set) {
  std::string out = "s,t,K,H,EGmF2,character\n";
  for (const auto& c : set.samples) {
    out += detail::format_shortest(c.s) + ',' + detail::format_shortest(c.t) + ',' +
           detail::format_shortest(c.K) + ',' + detail::format_shortest(c.H) + ',' +
           detail::format_shortest(c.EGmF2) + ',' + to_string(c.character) + '\n';
  }
  return out;
}

std::string verify_report_json(const std::string& digest, const std::vector<ConstancyReport>& reports,
                               const std::optional<std::string>& samples_path) {
  json doc;
  doc["tool_version"] = kToolVersion;
  doc["spec_digest"] = digest;
  doc["reports"] = json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_json(r));
  if (samples_path) doc["samples_path"] = *samples_path;
  return doc.dump(2) + "\n";
}

std::string probe_report_json(const ProbeResult& r) {
  json doc;
  doc["tool_version"] = kToolVersion;
  doc["problem"] = r.problem;
  doc["K0"] = r.K0;
  doc["best_residual"] = r.best_residual;
  doc["iterations"] = r.iterations;
  doc["seed"] = r.seed;
  doc["budget"] = r.budget;
  doc["params"] = r.params;
  return doc.dump(2) + "\n";
}

std::string families_json(const std::vector<FamilySpec>& families) {
  json arr = json::array();
  for (const auto& f : families) {
    json j;
    j["family"] = family_id(f.name);
    j["params"] = f.params;
    j["metric"] = family_metric(f.name).signature == Signature::Euclidean ? "euclidean" : "lorentzian";
    j["domain"] = domain_json(family_default_domain(f));
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace transurf
