#include "config.hpp"

#include <fstream>
#include <random>

#include "liegeo/error.hpp"

namespace liegeo::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Matrix number_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = number_list(v[r], where);
    if (r == 0) m.resize(rows, static_cast<Eigen::Index>(row.size()));
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) throw ConfigError(where + ": ragged matrix");
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[c];
  }
  return m;
}

void parse_filtration(const json& v, RunConfig& cfg) {
  if (v.is_string()) {
    const auto entry = catalog(v.get<std::string>());
    cfg.filtration = entry.filtration;
    cfg.n = entry.filtration->n();
    cfg.s = entry.s;
    cfg.index_set = entry.index_set;
    return;
  }
  check_keys(v, {"n", "name", "levels"}, "filtration");
  const int n = get<int>(v, "n", "filtration");
  if (n < 2) throw ConfigError("filtration.n must be >= 2");
  const SoBasis basis(n);
  std::vector<std::vector<AlgebraElement>> levels;
  const json& lv = v.at("levels");
  if (!lv.is_array()) throw ConfigError("filtration.levels: expected an array");
  for (const auto& level : lv) {
    if (!level.is_array()) throw ConfigError("filtration.levels: each level is an array of coefficient maps");
    std::vector<AlgebraElement> elems;
    for (const auto& e : level) elems.push_back(parse_element(basis, e));
    levels.push_back(std::move(elems));
  }
  cfg.filtration = std::make_shared<const Filtration>(n, levels, v.value("name", std::string{}));
  cfg.n = n;
}

void parse_field(const json& v, RunConfig& cfg) {
  if (!v.is_object() || !v.contains("kind")) throw ConfigError("field: expected an object with a kind");
  cfg.kind = field_kind_from_string(get<std::string>(v, "kind", "field"));
  switch (cfg.kind) {
    case FieldKind::sub_riemannian_chain:
    case FieldKind::general_bogoyavlensky: {
      if (cfg.kind == FieldKind::general_bogoyavlensky) {
        check_keys(v, {"kind", "s", "a0"}, "field");
        if (!v.contains("a0")) throw ConfigError("field: general-bogoyavlensky needs a0");
        cfg.a0 = number_matrix(v.at("a0"), "field.a0");
      } else {
        check_keys(v, {"kind", "s"}, "field");
      }
      if (v.contains("s")) {
        const json& s = v.at("s");
        if (s.is_string() && s.get<std::string>() == "random") {
          cfg.random_s = true;
        } else {
          cfg.s = number_list(s, "field.s");
        }
        // Catalog defaults for I only go with catalog defaults for s.
        cfg.index_set.reset();
      }
      break;
    }
    case FieldKind::manakov:
    case FieldKind::singular_manakov:
      check_keys(v, {"kind", "a", "b"}, "field");
      cfg.a = number_list(v.at("a"), "field.a");
      cfg.b = number_list(v.at("b"), "field.b");
      cfg.n = static_cast<int>(cfg.a.size());
      break;
    case FieldKind::rank2_so4: {
      check_keys(v, {"kind", "nu"}, "field");
      if (v.contains("nu")) {
        const auto nu = number_list(v.at("nu"), "field.nu");
        if (nu.size() != 2) throw ConfigError("field.nu: expected [nu1, nu2]");
        cfg.nu1 = nu[0];
        cfg.nu2 = nu[1];
      }
      cfg.n = 4;
      break;
    }
  }
}

std::vector<int> parse_variables(const SoBasis& basis, const json& v) {
  if (!v.is_array()) throw ConfigError("search.variables: expected an array of coordinate names");
  std::vector<int> out;
  for (const auto& name : v) {
    if (!name.is_string()) throw ConfigError("search.variables: expected coordinate names");
    out.push_back(parse_coordinate(basis, name.get<std::string>()).first);
  }
  return out;
}

}  // namespace

std::pair<int, double> parse_coordinate(const SoBasis& basis, std::string key) {
  if (key.rfind("e_", 0) == 0 || key.rfind("x_", 0) == 0) {
    key = key.substr(2);
  } else if (!key.empty() && (key[0] == 'e' || key[0] == 'x')) {
    key = key.substr(1);
  }
  try {
    return basis.parse_label(key);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

AlgebraElement parse_element(const SoBasis& basis, const json& map) {
  if (!map.is_object()) throw ConfigError("expected a coefficient map like {\"e_12\": 1.0}");
  Vector c = Vector::Zero(basis.dim());
  for (const auto& [key, value] : map.items()) {
    if (!value.is_number()) throw ConfigError("coefficient of " + key + " is not a number");
    const auto [k, sign] = parse_coordinate(basis, key);
    c(k) += sign * value.get<double>();
  }
  return AlgebraElement::from_coeffs(basis.n(), std::move(c));
}

RunConfig parse_config(const json& doc, std::string source) {
  try {
    check_keys(doc, {"spec_version", "description", "filtration", "index_set", "field", "initial", "t_end", "step",
                     "record_every", "monitors", "output", "include_g", "tolerance", "seed", "search", "hull"},
               "config");
    if (!doc.contains("spec_version")) throw ConfigError("config: missing spec_version");
    if (get<int>(doc, "spec_version", "config") != kSpecVersion)
      throw ConfigError("config: unsupported spec_version (expected " + std::to_string(kSpecVersion) + ")");

    RunConfig cfg;
    cfg.source = std::move(source);
    if (doc.contains("filtration")) parse_filtration(doc.at("filtration"), cfg);
    if (doc.contains("field")) {
      parse_field(doc.at("field"), cfg);
    } else if (!cfg.filtration && !doc.contains("hull")) {
      throw ConfigError("config: needs a field or a filtration");
    }
    const bool chain_kind =
        cfg.kind == FieldKind::sub_riemannian_chain || cfg.kind == FieldKind::general_bogoyavlensky;
    if (chain_kind && doc.contains("field") && !cfg.filtration)
      throw ConfigError("config: chain fields need a filtration");
    if (!chain_kind && cfg.filtration) throw ConfigError("config: filtration given for a non-chain field");
    if (doc.contains("index_set")) {
      if (!cfg.filtration) throw ConfigError("config: index_set needs a filtration");
      std::set<int> idx;
      for (const auto& i : doc.at("index_set")) {
        if (!i.is_number_integer()) throw ConfigError("index_set: expected integers");
        idx.insert(i.get<int>());
      }
      cfg.index_set = std::move(idx);
    }

    if (doc.contains("initial")) {
      const json& init = doc.at("initial");
      check_keys(init, {"x", "g"}, "initial");
      const SoBasis basis(cfg.n);
      if (init.contains("x")) {
        const json& x = init.at("x");
        if (!(x.is_string() && x.get<std::string>() == "random")) cfg.x0 = parse_element(basis, x).coeffs();
      }
      if (init.contains("g")) {
        cfg.g0 = number_matrix(init.at("g"), "initial.g");
        if (cfg.g0->rows() != cfg.n || cfg.g0->cols() != cfg.n) throw ConfigError("initial.g: wrong size");
        (void)GroupElement(*cfg.g0);
      }
    }

    if (doc.contains("t_end")) cfg.t_end = get<double>(doc, "t_end", "config");
    if (doc.contains("step")) cfg.step = get<double>(doc, "step", "config");
    if (doc.contains("record_every")) cfg.record_every = get<int>(doc, "record_every", "config");
    if (doc.contains("monitors")) cfg.monitors = get<std::vector<std::string>>(doc, "monitors", "config");
    if (doc.contains("output")) cfg.output = get<std::string>(doc, "output", "config");
    if (doc.contains("include_g")) cfg.include_g = get<bool>(doc, "include_g", "config");
    if (doc.contains("tolerance")) cfg.tolerance = get<double>(doc, "tolerance", "config");
    if (doc.contains("seed")) cfg.seed = get<std::uint64_t>(doc, "seed", "config");
    if (!(cfg.step > 0.0)) throw ConfigError("config: step must be positive");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("config: t_end must be non-negative");
    if (cfg.record_every < 1) throw ConfigError("config: record_every must be >= 1");

    if (doc.contains("search")) {
      const json& s = doc.at("search");
      check_keys(s, {"degree", "known", "variables"}, "search");
      SearchConfig sc;
      if (s.contains("degree")) sc.degree = get<int>(s, "degree", "search");
      if (sc.degree < 1) throw ConfigError("search.degree must be >= 1");
      if (s.contains("known")) sc.known = get<std::vector<std::string>>(s, "known", "search");
      for (const auto& k : sc.known) {
        if (k != "hamiltonian" && k != "I1" && k != "I2") throw ConfigError("search.known: unknown integral '" + k + "'");
        if (k == "I2" && cfg.n != 4) throw ConfigError("search.known: I2 needs so(4)");
      }
      if (s.contains("variables")) sc.variables = parse_variables(SoBasis(cfg.n), s.at("variables"));
      cfg.search = std::move(sc);
    }

    if (doc.contains("hull")) {
      const json& h = doc.at("hull");
      check_keys(h, {"n", "seeds", "labels", "preset", "complements"}, "hull");
      HullConfig hc;
      int n = cfg.n;
      if (h.contains("n")) n = get<int>(h, "n", "hull");
      if (n < 2) throw ConfigError("hull: ambient n missing");
      if (cfg.n == 0) cfg.n = n;
      if (n != cfg.n) throw ConfigError("hull.n disagrees with the filtration");
      const SoBasis basis(n);
      if (h.contains("preset")) {
        if (get<std::string>(h, "preset", "hull") != "two-generator") throw ConfigError("hull.preset: unknown preset");
        hc.seeds = two_generator_seed(n);
        hc.labels = {"v1", "v2"};
      }
      if (h.contains("complements")) {
        if (!cfg.filtration) throw ConfigError("hull.complements needs a filtration");
        for (const auto& i : h.at("complements")) {
          const int level = i.get<int>();
          if (level < 0 || level > cfg.filtration->depth()) throw ConfigError("hull.complements: no such level");
          const Matrix& cb = cfg.filtration->complement_basis(level);
          for (Eigen::Index c = 0; c < cb.cols(); ++c) {
            hc.seeds.push_back(AlgebraElement::from_coeffs(n, cb.col(c)));
            hc.labels.push_back("p" + std::to_string(level) + "_" + std::to_string(c + 1));
          }
        }
      }
      if (h.contains("seeds")) {
        for (const auto& e : h.at("seeds")) hc.seeds.push_back(parse_element(basis, e));
        if (h.contains("labels")) {
          const auto labels = get<std::vector<std::string>>(h, "labels", "hull");
          if (labels.size() != h.at("seeds").size()) throw ConfigError("hull.labels: one label per seed");
          hc.labels.insert(hc.labels.end(), labels.begin(), labels.end());
        } else {
          for (std::size_t k = 0; k < h.at("seeds").size(); ++k) hc.labels.push_back("s" + std::to_string(hc.labels.size() + 1));
        }
      }
      if (hc.seeds.empty()) throw ConfigError("hull: no seed vectors");
      cfg.hull = std::move(hc);
    }

    if (doc.contains("field")) (void)make_field(cfg);
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc, path);
}

std::vector<double> resolved_s(const RunConfig& cfg) {
  if (!cfg.random_s) return cfg.s;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::vector<double> s(cfg.filtration->depth() + 1);
  for (auto& v : s) v = uni(rng);
  return s;
}

VectorFieldSpec make_field(const RunConfig& cfg) {
  switch (cfg.kind) {
    case FieldKind::sub_riemannian_chain: {
      const auto s = resolved_s(cfg);
      if (cfg.index_set) return VectorFieldSpec::sub_riemannian(SRStructure(cfg.filtration, *cfg.index_set, s));
      return VectorFieldSpec::chain(cfg.filtration, s);
    }
    case FieldKind::general_bogoyavlensky:
      return VectorFieldSpec::bogoyavlensky(cfg.filtration, resolved_s(cfg), *cfg.a0);
    case FieldKind::manakov:
      return VectorFieldSpec::manakov(std::make_shared<const ManakovData>(cfg.a, cfg.b, ManakovMode::regular));
    case FieldKind::singular_manakov:
      return VectorFieldSpec::manakov(std::make_shared<const ManakovData>(cfg.a, cfg.b, ManakovMode::singular));
    case FieldKind::rank2_so4:
      return VectorFieldSpec::rank2_so4(cfg.nu1, cfg.nu2);
  }
  throw ConfigError("unhandled field kind");
}

AlgebraElement initial_momentum(const RunConfig& cfg) {
  if (cfg.x0) return AlgebraElement::from_coeffs(cfg.n, *cfg.x0);
  // Separate stream from the random s draw.
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vector c(SoBasis(cfg.n).dim());
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = uni(rng);
  return AlgebraElement::from_coeffs(cfg.n, std::move(c));
}

GroupElement initial_position(const RunConfig& cfg) {
  return cfg.g0 ? GroupElement(*cfg.g0) : GroupElement::identity(cfg.n);
}

}  // namespace liegeo::cli
