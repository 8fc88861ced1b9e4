#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "liegeo/error.hpp"
#include "liegeo/filtration.hpp"

namespace liegeo {

namespace {

using Level = std::vector<AlgebraElement>;

AlgebraElement w(int n, int i, int j) { return AlgebraElement::unit(n, i, j); }

Level full_algebra(int n) {
  SoBasis b(n);
  Level out;
  for (int k = 0; k < b.dim(); ++k) {
    auto [i, j] = b.pair(k);
    out.push_back(w(n, i, j));
  }
  return out;
}

Level concat(Level a, const Level& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string trim(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

/// Parses "head(a;b,c,...)" or "head(a)" into integers.
bool parse_call(const std::string& name, const std::string& head, std::vector<int>& args) {
  const std::string s = trim(name);
  if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return false;
  std::string body = s.substr(head.size() + 1, s.size() - head.size() - 2);
  std::replace(body.begin(), body.end(), ';', ',');
  std::stringstream ss(body);
  std::string tok;
  args.clear();
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw Error(Errc::unknown_name, "bad catalog argument '" + tok + "'");
    } catch (const std::logic_error&) {
      throw Error(Errc::unknown_name, "bad catalog argument '" + tok + "' in " + name);
    }
  }
  return true;
}

CatalogEntry make_entry(std::string name, int n, const std::vector<Level>& chain, std::set<int> index_set,
                        std::vector<double> s) {
  auto f = std::make_shared<const Filtration>(n, chain, name);
  return CatalogEntry{std::move(name), std::move(f), std::move(index_set), std::move(s)};
}

std::set<int> complements_only(int depth) {
  std::set<int> idx;
  for (int i = 1; i <= depth; ++i) idx.insert(i);
  return idx;
}

std::vector<double> ramp(int depth) {
  std::vector<double> s(depth + 1);
  std::iota(s.begin(), s.end(), 0.0);
  return s;
}

CatalogEntry lanci(const std::vector<int>& args, const std::string& name) {
  if (args.size() < 3) throw Error(Errc::invalid_partition, "lanci needs n and at least two block sizes");
  const int n = args[0];
  const std::vector<int> l(args.begin() + 1, args.end());
  const int p = static_cast<int>(l.size());
  const int total = std::accumulate(l.begin(), l.end(), 0);
  if (total != n) throw Error(Errc::invalid_partition, "block sizes do not sum to n");
  if (l[0] < 2) throw Error(Errc::invalid_partition, "l_1 must be at least 2");
  if (std::any_of(l.begin(), l.end(), [](int v) { return v < 1; }))
    throw Error(Errc::invalid_partition, "block sizes must be positive");
  if (!(1 < p && p < n)) throw Error(Errc::invalid_partition, "need 1 < p < n");

  std::vector<Level> chain;
  auto push = [&chain](Level level) {
    // so(L) + so(1) = so(L): skip repeated levels.
    if (!chain.empty() && chain.back().size() == level.size()) return;
    chain.push_back(std::move(level));
  };
  int prefix = l[0];
  push(block_subalgebra(n, {l[0]}));
  for (int k = 1; k < p; ++k) {
    push(block_subalgebra(n, {prefix, l[k]}));
    prefix += l[k];
    push(block_subalgebra(n, {prefix}));
  }
  const int depth = static_cast<int>(chain.size()) - 1;
  return make_entry(name, n, chain, complements_only(depth), ramp(depth));
}

}  // namespace

std::vector<AlgebraElement> block_subalgebra(int n, const std::vector<int>& blocks, int offset) {
  Level out;
  int start = offset;
  for (int size : blocks) {
    for (int i = start; i < start + size; ++i)
      for (int j = i + 1; j < start + size; ++j) out.push_back(w(n, i, j));
    start += size;
  }
  if (start - 1 > n) throw Error(Errc::invalid_partition, "blocks exceed n");
  return out;
}

std::vector<AlgebraElement> two_generator_seed(int n) {
  if (n < 3) throw Error(Errc::invalid_parameters, "two-generator seed needs n >= 3");
  AlgebraElement v1 = AlgebraElement::zero(n);
  for (int k = 2; k < n; ++k) v1 = v1 + w(n, k, k + 1);
  return {v1, w(n, 1, 2)};
}

std::vector<AlgebraElement> g2_basis() {
  auto e = [](int i, int j) { return w(7, i, j); };
  return {
      e(3, 2) + e(6, 7), e(1, 3) + e(5, 7), e(2, 1) + e(7, 4), e(1, 4) + e(7, 2),
      e(5, 1) + e(3, 7), e(3, 5) + e(1, 7), e(4, 3) + e(6, 1),  // P_0..P_6
      e(4, 5) + e(6, 7), e(6, 4) + e(5, 7), e(6, 5) + e(7, 4), e(3, 6) + e(7, 2),
      e(2, 6) + e(3, 7), e(3, 5) + e(4, 2), e(4, 3) + e(5, 2),  // Q_0..Q_6
  };
}

std::vector<AlgebraElement> g2_complement_basis() {
  auto e = [](int i, int j) { return w(7, i, j); };
  return {
      e(7, 1) + e(2, 4) + e(3, 5), e(1, 6) + e(2, 5) + e(4, 3), e(5, 1) + e(2, 6) + e(7, 3),
      e(1, 4) + e(2, 7) + e(3, 6), e(3, 2) + e(4, 5) + e(7, 6), e(3, 1) + e(4, 6) + e(5, 7),
      e(2, 1) + e(4, 7) + e(6, 5),
  };
}

CatalogEntry catalog(std::string_view name_view) {
  const std::string name(name_view);
  std::vector<int> args;

  if (name == "su3-g2-so7") {
    const Level g2 = g2_basis();
    Level su3{g2[0]};
    su3.insert(su3.end(), g2.begin() + 7, g2.end());
    return make_entry(name, 7, {su3, g2, full_algebra(7)}, {1, 2}, {0.0, 1.0, 2.0});
  }
  if (name == "u1-su2-u2-so4") {
    const int n = 4;
    const Level u1{w(n, 1, 2) - w(n, 3, 4)};
    const Level su2 = concat(u1, {w(n, 1, 4) - w(n, 2, 3), w(n, 1, 3) + w(n, 2, 4)});
    const Level u2{w(n, 1, 2), w(n, 3, 4), w(n, 1, 4) - w(n, 2, 3), w(n, 1, 3) + w(n, 2, 4)};
    return make_entry(name, n, {u1, su2, u2, full_algebra(n)}, {1, 3}, {0.0, 1.0, 0.0, 2.0});
  }
  if (name == "so2-so3-so4") {
    return make_entry(name, 4, {block_subalgebra(4, {2}), block_subalgebra(4, {3}), full_algebra(4)}, {1, 2},
                      {0.0, 1.0, 2.0});
  }
  if (name == "so2-so2so2-so4") {
    return make_entry(name, 4, {block_subalgebra(4, {2}), block_subalgebra(4, {2, 2}), full_algebra(4)},
                      {1, 2}, {0.0, 1.0, 2.0});
  }
  if (name == "line-so3-so4") {
    const int n = 4;
    const Level line{w(n, 2, 3) + w(n, 3, 4)};
    return make_entry(name, n, {line, block_subalgebra(n, {3}, 2), full_algebra(n)}, {0, 2}, {2.0, 0.0, 1.0});
  }
  if (parse_call(name, "lanci", args)) return lanci(args, name);
  if (parse_call(name, "stiefel", args)) {
    if (args.size() != 1 || args[0] < 3) throw Error(Errc::invalid_parameters, "stiefel(n) needs n >= 3");
    const int n = args[0];
    return make_entry(name, n,
                      {block_subalgebra(n, {n - 2}, 3), block_subalgebra(n, {n - 1}, 2), full_algebra(n)},
                      {2}, {0.0, 0.0, 1.0});
  }
  if (parse_call(name, "stiefel-contact", args)) {
    if (args.size() != 1 || args[0] < 3)
      throw Error(Errc::invalid_parameters, "stiefel-contact(n) needs n >= 3");
    const int n = args[0];
    const Level k = block_subalgebra(n, {n - 2}, 3);
    return make_entry(name, n, {k, concat(k, {w(n, 1, 2)}), full_algebra(n)}, {2}, {0.0, 0.0, 1.0});
  }
  throw Error(Errc::unknown_name, "unknown catalog entry '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"su3-g2-so7",    "u1-su2-u2-so4",     "so2-so3-so4",          "so2-so2so2-so4",
          "line-so3-so4",  "lanci(n;l1,...,lp)", "stiefel(n)",           "stiefel-contact(n)"};
}

}  // namespace liegeo
