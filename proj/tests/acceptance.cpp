// Acceptance run: one PASS/FAIL line per criterion.
#include "rgi/amplitude.hpp"
#include "rgi/oracle.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rgi;

namespace {

using Clock = std::chrono::steady_clock;

const NPoly N = NPoly::monomial(1, 1);
constexpr int kDegree = 9;

int failures = 0;

void report(int id, bool ok, const std::string &what, double secs, const std::string &detail = "")
{
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << (ok ? "PASS " : "FAIL ") << id << " " << what << " (" << secs << " s)";
  if (!detail.empty())
    os << ": " << detail;
  std::cout << os.str() << std::endl;
  failures += !ok;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string first_failures(const VerifyReport &r)
{
  std::ostringstream os;
  os << r.identity << " checked " << r.checked << ", failures " << r.failures.size();
  for (std::size_t i = 0; i < r.failures.size() && i < 3; ++i)
    os << "; " << r.failures[i].key << " lhs=" << r.failures[i].lhs << " rhs=" << r.failures[i].rhs;
  return os.str();
}

CorrelatorKey ext(int g, std::vector<int> taus, std::vector<int> sigmas)
{
  CorrelatorKey k{Family::Extended, g, std::move(taus), std::move(sigmas), {}, 0, 0};
  k.k = static_cast<int>(k.sigmas.size());
  return k;
}

// closed-surface genus: cap every phi-cycle, then g = 2h + b - 1
int doubled_genus(const RibbonGraph &G, int b)
{
  int V = static_cast<int>(permutation_cycles(G.sigma).size());
  std::vector<int> phi(G.dart_count());
  for (int d = 0; d < G.dart_count(); ++d)
    phi[d] = G.phi(d);
  int P = static_cast<int>(permutation_cycles(phi).size());
  int chi = V - G.dart_count() / 2 + P;
  return 2 - chi + b - 1;
}

int component_genus(const RibbonGraph &G) { return doubled_genus(G, trace(G).b); }

bool same_codes(const std::vector<Code> &a, const std::vector<Code> &b) { return a == b; }

template <class T> bool strictly_sorted(const std::vector<T> &v)
{
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i - 1] < v[i]))
      return false;
  return true;
}

// sectors the degree-9 tables touch
struct Sectors
{
  std::vector<std::tuple<int, int, int>> refined;                // g, k, l
  std::vector<std::tuple<int, int, std::vector<int>>> extended;  // g, l, exc
  std::vector<std::pair<int, int>> kp;                           // g, n
};

Sectors sectors(int D)
{
  Sectors S;
  for (int s = 1; 3 * s <= D; ++s) {
    for (int k = 0; k <= s + 1; ++k)
      for (int l = 0; l + k <= s + 1; ++l)
        S.refined.emplace_back(s + 1 - l - k, k, l);
    for (int X = 0; X <= s + 1; ++X)
      for (int l = 0; l + X <= s + 1; ++l)
        for (auto &E : bounded_multisets(X, 3 * s - l, [](int c) { return 2 * c + 2; })) {
          int rest = 3 * s;
          for (int c : E)
            rest -= 2 * c + 2;
          if (rest < l || (rest - l) % 2 || (l == 0 && rest != 0))
            continue;
          S.extended.emplace_back(s + 1 - l - X, l, E);
        }
    for (int n = 1; n <= s + 1; ++n)
      S.kp.emplace_back(s + 1 - n, n);
  }
  return S;
}

} // namespace

int main()
{
  std::cout << "acceptance: degree cap " << kDegree << std::endl;

  // 1
  {
    auto t0 = Clock::now();
    Enumerator en;
    Amplitude amp(en);
    std::vector<std::string> bad;
    auto expect = [&](const std::string &name, const NPoly &got, const NPoly &want) {
      if (got != want)
        bad.push_back(name + "=" + got.render() + " want " + want.render());
    };
    expect("<tau0 sigma0>", amp.extended_sector(0, 1, {0}).get(ext(0, {0}, {0})), N);
    expect("<sigma0^3>", amp.extended_sector(0, 0, {0, 0, 0}).get(ext(0, {}, {0, 0, 0})), N);
    expect("<tau0^2 sigma1>", amp.extended_sector(0, 2, {1}).get(ext(0, {0, 0}, {1})), N);
    expect("<tau1>", amp.extended_sector(1, 1, {}).get(ext(1, {1}, {})), N * N * Rational(1, 2));
    expect("<theta1 theta2>", amp.kp_sector(0, 2).get({Family::KP, 0, {1, 2}, {}, {}, 0, 0}), N * Rational(2));
    double s = since(t0);
    std::string detail;
    for (auto &b : bad)
      detail += b + "; ";
    report(1, bad.empty() && s < 1.0, "foundational values", s, detail);
  }

  EnumOptions opt;
  opt.threads = 1;
  Enumerator en(opt);
  Amplitude amp(en);

  auto t_ext = Clock::now();
  CorrelatorTable E;
  std::string ext_error;
  try {
    E = amp.extended_table(kDegree);
  } catch (const std::exception &e) {
    ext_error = e.what();
  }
  double ext_secs = since(t_ext);

  // 2, 3
  {
    auto r = verify_string(E);
    bool ok = ext_error.empty() && r.passed() && r.checked > 0 && ext_secs < 300;
    report(2, ok, "string recursion through degree 9", ext_secs, ext_error.empty() ? first_failures(r) : ext_error);
    auto t0 = Clock::now();
    auto d = verify_dilaton(E);
    report(3, ext_error.empty() && d.passed() && d.checked > 0, "dilaton recursion through degree 9", since(t0),
           first_failures(d));
  }

  auto t_tables = Clock::now();
  auto [R, V] = amp.refined_tables(kDegree);
  auto K = amp.kp_table(kDegree);
  double table_secs = since(t_tables);
  std::cout << "tables: extended " << E.entries.size() << ", refined " << R.entries.size() << ", very refined "
            << V.entries.size() << ", kp " << K.entries.size() << " (" << table_secs << " s)" << std::endl;

  // 5 (its table also feeds 4)
  auto t5 = Clock::now();
  CorrelatorTable O;
  std::string oracle_error;
  try {
    O = oracle::miwa_extract(oracle::kp_free_energy(6, 6));
  } catch (const std::exception &e) {
    oracle_error = e.what();
  }
  double oracle_secs = since(t5);

  // 4
  {
    auto t0 = Clock::now();
    auto r = verify_parity({&E, &R, &V, &K, &O});
    report(4, r.passed() && r.checked > 0, "parity and degree laws on all tables", since(t0), first_failures(r));
  }

  {
    auto A = amp.kp_table(6, 3);
    std::ostringstream detail;
    int mism = 0;
    std::set<CorrelatorKey> keys;
    for (auto &kv : A.entries)
      keys.insert(kv.first);
    for (auto &kv : O.entries)
      if (kv.first.taus.size() <= 3)
        keys.insert(kv.first);
    for (auto &k : keys)
      if (A.get(k) != O.get(k)) {
        if (mism++ < 3)
          detail << k.render() << " amplitude=" << A.get(k).render() << " oracle=" << O.get(k).render() << "; ";
      }
    detail << keys.size() << " keys, " << mism << " mismatches";
    if (!oracle_error.empty())
      detail << "; " << oracle_error;
    report(5, oracle_error.empty() && mism == 0 && !keys.empty() && oracle_secs < 600,
           "oracle equivalence for sum a <= 6, n <= 3, M = 6", oracle_secs, detail.str());
  }

  // 6
  {
    auto t0 = Clock::now();
    auto r = verify_collapse(E, R);
    report(6, r.passed() && r.checked > 0, "collapse identity through degree 9", since(t0), first_failures(r));
  }

  // 7
  {
    auto t0 = Clock::now();
    CorrelatorTable Rs, Vs;
    for (auto &kv : R.entries)
      if (kv.first.k <= 3 && kv.first.genus <= 2)
        Rs.entries.insert(kv);
    for (auto &kv : V.entries)
      if (kv.first.k <= 3 && kv.first.genus <= 2)
        Vs.entries.insert(kv);
    auto r = verify_partition_sum(Rs, Vs);
    report(7, r.passed() && r.checked > 0, "partition sum for k <= 3, g <= 2", since(t0), first_failures(r));
  }

  // 8
  {
    auto t0 = Clock::now();
    auto r = verify_conjecture(E, K, 1);
    for (auto &x : r.informational)
      std::cout << "  g>=2 " << x.key << " lhs=" << x.lhs << " rhs=" << x.rhs << std::endl;
    report(8, r.passed() && r.checked > 0, "conjecture exact for g <= 1", since(t0),
           first_failures(r) + ", informational " + std::to_string(r.informational.size()));
  }

  // 9
  {
    auto t0 = Clock::now();
    std::vector<std::string> bad;
    auto fail = [&](const std::string &s) {
      if (bad.size() < 5)
        bad.push_back(s);
      else if (bad.size() == 5)
        bad.push_back("...");
    };
    long long graphs = 0;
    auto S = sectors(kDegree);

    for (auto [g, k, l] : en.cached_component_sectors()) {
      const auto &U = en.components_unlabeled(g, k, l);
      if (!strictly_sorted(U.codes))
        fail("component codes not strictly sorted");
      for (std::size_t i = 0; i < U.items.size(); ++i) {
        const auto &G = U.items[i];
        ++graphs;
        auto t = trace(G);
        int g2 = doubled_genus(G, t.b);
        if (t.genus != g2 || t.genus != g)
          fail("component genus mismatch");
        if (t.b > t.genus + 1 || (t.b - t.genus) % 2 == 0)
          fail("component b law");
        auto c = classify(G);
        if (c.tag == Classification::Tag::Invalid || c.g != g || c.k != k || c.l != l)
          fail("component reclassification");
        if (canonical_code(G) != U.codes[i])
          fail("component code");
      }
    }

    auto check_nodal = [&](const Enumerator::NodalEntry &e, OddMode mode, int g, int l, const std::string &where) {
      ++graphs;
      const auto &ng = e.graph;
      auto p = smooth(ng);
      int sum = 0;
      for (auto &c : ng.components)
        sum += component_genus(c);
      int g2 = sum + static_cast<int>(ng.nodes.size()) - static_cast<int>(ng.components.size()) + 1;
      if (p.genus != g || g2 != g)
        fail(where + " genus mismatch");
      if (p.b > g + 1 || (p.b - g) % 2 == 0)
        fail(where + " b law");
      if (!is_odd(ng, mode))
        fail(where + " not odd");
      int faces = 0;
      for (auto &c : ng.components) {
        auto cl = classify(c);
        if (cl.tag == Classification::Tag::Invalid)
          fail(where + " invalid component");
        faces += cl.l;
      }
      if (faces != l)
        fail(where + " face count");
    };

    Enumerator four(EnumOptions{4, 0, 0});
    for (auto &[g, k, l] : S.refined) {
      int deg = 3 * g - 3 + k + 3 * l;
      if (g < 0 || deg < l || (deg - l) % 2 || (l == 0 && deg != 0))
        continue;
      const auto &U = en.refined_unlabeled(g, k, l);
      if (!strictly_sorted(U.codes))
        fail("refined codes not sorted");
      if (!same_codes(U.codes, four.refined_unlabeled(g, k, l).codes))
        fail("refined codes differ across thread counts");
      for (std::size_t i = 0; i < U.items.size(); ++i) {
        check_nodal(U.items[i], OddMode::Critical, g, l, "refined");
        if (nodal_canonical_code(U.items[i].graph) != U.codes[i])
          fail("refined code");
      }
      for (int b = 1; b <= g + 1; ++b) {
        auto cat = en.gen_nodal_b(g, k, b, l);
        if (!strictly_sorted(cat.codes))
          fail("labeled refined codes not sorted");
        for (auto &e : cat.items) {
          auto c = contribution(e.graph, e.profile);
          if (-total_degree(c.factors) != deg)
            fail("refined degree identity");
        }
      }
    }

    for (auto &[g, l, X] : S.extended) {
      if (g < 0)
        continue;
      const auto &U = en.extended_unlabeled(g, l, X);
      if (!strictly_sorted(U.codes))
        fail("extended codes not sorted");
      if (!same_codes(U.codes, four.extended_unlabeled(g, l, X).codes))
        fail("extended codes differ across thread counts");
      for (std::size_t i = 0; i < U.items.size(); ++i) {
        check_nodal(U.items[i], OddMode::Extended, g, l, "extended");
        if (U.items[i].profile.exc != X)
          fail("extended exceptional profile");
      }
      int s = 0;
      for (int c : X)
        s += 2 * c + 2;
      int want = 3 * (g - 1 + l + static_cast<int>(X.size())) - s;
      auto cat = en.gen_extended(g, l, X);
      if (!strictly_sorted(cat.codes))
        fail("labeled extended codes not sorted");
      for (auto &e : cat.items)
        if (-total_degree(contribution(e.graph, e.profile).factors) != want)
          fail("extended degree identity");
    }

    for (auto &[g, n] : S.kp) {
      if (g < 0)
        continue;
      auto cat = en.gen_components(g, 0, n);
      if (!strictly_sorted(cat.codes))
        fail("kp codes not sorted");
      if (!same_codes(cat.codes, four.gen_components(g, 0, n).codes))
        fail("kp codes differ across thread counts");
      for (auto &G : cat.items)
        if (-total_degree(kp_contribution(G).factors) != 3 * (g - 1 + n))
          fail("kp degree identity");
    }

    std::string detail = std::to_string(graphs) + " unlabeled graphs checked";
    for (auto &b : bad)
      detail += "; " + b;
    report(9, bad.empty() && graphs > 0, "structural invariants and determinism", since(t0), detail);
  }

  std::cout << (failures ? "acceptance: FAILED " : "acceptance: all passed ") << failures << std::endl;
  return failures ? 1 : 0;
}
