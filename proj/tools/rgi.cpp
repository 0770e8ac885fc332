// rgi: ribbon-graph enumeration, open correlators and the KP oracle.

#include "rgi/amplitude.hpp"
#include "rgi/enumerate.hpp"
#include "rgi/io.hpp"
#include "rgi/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace rgi;
using json = nlohmann::json;

namespace {

enum Exit { Ok = 0, IdentityFailure = 1, Usage = 2, Bounds = 3, Internal = 4 };

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Config
{
  std::string command;
  std::string family;
  int g = -1;
  int k = -1;
  int l = -1;
  int b = -1;
  int n = -1;
  std::vector<int> kbar;
  std::vector<int> exc;
  bool exc_given = false;
  int genus_max = -1;
  int degree = -1;
  int max_degree = 6;
  int m = -1;
  int dart_max = 0;
  std::string identity = "all";
  std::string out;
  std::string format = "json";
  int threads = 1;

  json to_json() const
  {
    json j = {{"command", command}, {"format", format}, {"threads", threads}};
    auto put = [&](const char *name, int v) {
      if (v >= 0)
        j[name] = v;
    };
    if (!family.empty())
      j["family"] = family;
    put("g", g);
    put("k", k);
    put("l", l);
    put("b", b);
    put("n", n);
    put("genus_max", genus_max);
    put("degree", degree);
    if (command == "oracle") {
      j["max_degree"] = max_degree;
      j["m"] = m;
    }
    if (dart_max > 0)
      j["dart_max"] = dart_max;
    if (!kbar.empty())
      j["kbar"] = kbar;
    if (exc_given)
      j["exc"] = exc;
    if (command == "verify")
      j["identity"] = identity;
    j["resource_cap"] = resource_cap_from_env();
    return j;
  }
};

void write_output(const Config &cfg, const std::string &text)
{
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f)
    throw UsageError("cannot open " + cfg.out);
  f << text;
}

void emit(const Config &cfg, json doc, const CorrelatorTable *table = nullptr)
{
  if (cfg.format == "csv") {
    if (!table)
      throw UsageError("csv output is only available for tables");
    write_output(cfg, io::table_csv(*table));
    return;
  }
  write_output(cfg, doc.dump(2) + "\n");
}

void need(bool ok, const std::string &what)
{
  if (!ok)
    throw UsageError(what);
}

int cmd_enumerate(const Config &cfg, Enumerator &en)
{
  json bounds, graphs;
  std::size_t count = 0;
  auto fill = [&](const auto &cat) {
    bounds = {{"dart_bound", cat.dart_bound}, {"leaves", cat.leaves}};
    graphs = io::catalog_json(cat);
    count = cat.items.size();
  };
  const auto &f = cfg.family;
  if (f == "critical") {
    need(cfg.g >= 0 && cfg.k >= 0 && cfg.l >= 0, "critical needs --g --k --l");
    fill(en.gen_components(cfg.g, cfg.k, cfg.l));
  } else if (f == "kp") {
    need(cfg.l >= 1 && cfg.genus_max >= 0, "kp needs --faces >= 1 and --genus-max");
    fill(en.gen_kp(cfg.l, cfg.genus_max));
  } else if (f == "very-refined") {
    need(cfg.g >= 0 && cfg.l >= 0 && !cfg.kbar.empty(), "very-refined needs --g --kbar --l");
    fill(en.gen_nodal_kbar(cfg.g, cfg.kbar, cfg.l));
  } else if (f == "refined") {
    need(cfg.g >= 0 && cfg.k >= 0 && cfg.l >= 0 && cfg.b >= 1, "refined needs --g --k --b --l");
    fill(en.gen_nodal_b(cfg.g, cfg.k, cfg.b, cfg.l));
  } else if (f == "extended") {
    need(cfg.g >= 0 && cfg.l >= 0, "extended needs --g --l [--exc]");
    fill(en.gen_extended(cfg.g, cfg.l, cfg.exc));
  } else {
    throw UsageError("unknown family " + f);
  }
  json doc = io::envelope("enumerate", cfg.to_json(), bounds);
  doc["count"] = count;
  doc["graphs"] = graphs;
  emit(cfg, doc);
  return Ok;
}

int cmd_correlator(const Config &cfg, Enumerator &en)
{
  Amplitude amp(en);
  CorrelatorTable T;
  const auto &f = cfg.family;
  const bool sector = cfg.g >= 0;
  if (!sector)
    need(cfg.degree >= 0, "correlator needs --degree or sector parameters");
  if (f == "extended") {
    T = sector ? (need(cfg.l >= 0, "extended sector needs --l"), amp.extended_sector(cfg.g, cfg.l, cfg.exc))
               : amp.extended_table(cfg.degree);
  } else if (f == "refined") {
    if (sector) {
      need(cfg.k >= 0 && cfg.l >= 0, "refined sector needs --k --l");
      T = amp.refined_sector(cfg.g, cfg.k, cfg.l).first;
    } else {
      T = amp.refined_tables(cfg.degree).first;
    }
  } else if (f == "very-refined") {
    if (sector) {
      need(cfg.l >= 0 && !cfg.kbar.empty(), "very-refined sector needs --kbar --l");
      T = amp.very_refined_sector(cfg.g, cfg.kbar, cfg.l);
    } else {
      T = amp.refined_tables(cfg.degree).second;
    }
  } else if (f == "kp") {
    if (sector) {
      need(cfg.n >= 1, "kp sector needs --n");
      T = amp.kp_sector(cfg.g, cfg.n);
    } else {
      T = amp.kp_table(cfg.degree);
    }
  } else {
    throw UsageError("unknown family " + f);
  }
  json doc = io::envelope("correlator", cfg.to_json(),
                          {{"dart_bound", T.dart_bound}, {"degree_cap", T.degree_cap}, {"graphs", T.graphs}});
  doc["entries"] = io::table_json(T);
  emit(cfg, doc, &T);
  return Ok;
}

int cmd_oracle(const Config &cfg)
{
  int M = cfg.m > 0 ? cfg.m : cfg.max_degree;
  need(cfg.max_degree >= 3, "--max-degree must be at least 3");
  if (M < cfg.max_degree)
    throw UsageError("--m must be at least --max-degree");
  auto F = oracle::kp_free_energy(M, cfg.max_degree, resource_cap_from_env(), cfg.threads);
  auto T = oracle::miwa_extract(F);
  json doc = io::envelope("oracle", cfg.to_json(),
                          {{"degree_cap", cfg.max_degree},
                           {"variables", M},
                           {"matchings", F.stats.matchings},
                           {"connected", F.stats.connected}});
  doc["entries"] = io::table_json(T);
  emit(cfg, doc, &T);
  return Ok;
}

int cmd_verify(const Config &cfg, Enumerator &en)
{
  static const std::vector<std::string> known = {"string", "dilaton", "parity", "collapse", "partition_sum",
                                                 "conjecture", "all"};
  if (std::find(known.begin(), known.end(), cfg.identity) == known.end())
    throw UsageError("unknown identity " + cfg.identity);
  const int D = cfg.degree >= 0 ? cfg.degree : 9;
  auto want = [&](const char *s) { return cfg.identity == "all" || cfg.identity == s; };
  Amplitude amp(en);

  auto restrict = [&](CorrelatorTable T) {
    if (cfg.g < 0)
      return T;
    CorrelatorTable R = T;
    R.entries.clear();
    for (auto &kv : T.entries)
      if (kv.first.genus == cfg.g)
        R.entries.insert(kv);
    return R;
  };

  CorrelatorTable ext, ref, very, kp;
  bool need_ext = want("string") || want("dilaton") || want("parity") || want("collapse") || want("conjecture");
  bool need_ref = want("parity") || want("collapse") || want("partition_sum");
  bool need_kp = want("parity") || want("conjecture");
  if (need_ext)
    ext = amp.extended_table(D);
  if (need_ref) {
    auto rv = amp.refined_tables(D);
    ref = rv.first;
    very = rv.second;
  }
  if (need_kp)
    kp = amp.kp_table(D);

  std::vector<VerifyReport> reports;
  if (want("string"))
    reports.push_back(verify_string(ext));
  if (want("dilaton"))
    reports.push_back(verify_dilaton(ext));
  if (want("parity")) {
    auto e = restrict(ext), r = restrict(ref), v = restrict(very), q = restrict(kp);
    reports.push_back(verify_parity({&e, &r, &v, &q}));
  }
  if (want("collapse"))
    reports.push_back(verify_collapse(restrict(ext), ref));
  if (want("partition_sum"))
    reports.push_back(verify_partition_sum(restrict(ref), very));
  if (want("conjecture"))
    reports.push_back(verify_conjecture(restrict(ext), kp));

  bool ok = true;
  json list = json::array();
  for (auto &r : reports) {
    ok = ok && r.passed();
    list.push_back(io::report_json(r));
  }
  json doc = io::envelope("verify", cfg.to_json(),
                          {{"degree_cap", D},
                           {"dart_bound", std::max({ext.dart_bound, ref.dart_bound, kp.dart_bound})}});
  doc["passed"] = ok;
  doc["reports"] = list;
  emit(cfg, doc);
  for (auto &r : reports)
    std::cerr << r.identity << ": " << r.checked << " checked, " << r.failures.size() << " failures\n";
  return ok ? Ok : IdentityFailure;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Ribbon graphs, open intersection numbers and the Kontsevich-Penner oracle"};
  app.set_version_flag("--version", io::tool_version);
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;

  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--degree", cfg.degree, "total degree cap")->check(CLI::NonNegativeNumber);

  auto family_opts = [&](CLI::App *sub) {
    sub->add_option("--family", cfg.family, "critical | kp | refined | very-refined | extended");
    sub->add_option("--g,--genus", cfg.g, "doubled genus")->check(CLI::NonNegativeNumber);
    sub->add_option("--k", cfg.k, "free boundary marked points")->check(CLI::NonNegativeNumber);
    sub->add_option("--l,--faces", cfg.l, "labeled faces")->check(CLI::NonNegativeNumber);
    sub->add_option("--b", cfg.b, "boundary components after smoothing")->check(CLI::PositiveNumber);
    sub->add_option("--n", cfg.n, "KP insertions")->check(CLI::PositiveNumber);
    sub->add_option("--kbar", cfg.kbar, "free points per boundary, comma separated")->delimiter(',');
    sub->add_option("--exc", cfg.exc, "sigma descendants, comma separated")->delimiter(',');
    sub->add_option("--genus-max", cfg.genus_max, "largest genus for kp")->check(CLI::NonNegativeNumber);
    sub->add_option("--dart-max", cfg.dart_max, "refuse searches whose dart bound exceeds this")
        ->check(CLI::PositiveNumber);
  };

  auto *en = app.add_subcommand("enumerate", "write a graph catalog");
  family_opts(en);
  auto *co = app.add_subcommand("correlator", "compute a correlator table");
  family_opts(co);
  auto *orc = app.add_subcommand("oracle", "KP table from the Wick expansion");
  orc->add_option("--max-degree", cfg.max_degree, "largest lambda degree")->check(CLI::PositiveNumber);
  orc->add_option("--m", cfg.m, "number of symbolic variables (default: max degree)")->check(CLI::PositiveNumber);
  auto *ve = app.add_subcommand("verify", "run the identity suite");
  ve->add_option("identity", cfg.identity, "string | dilaton | parity | collapse | partition_sum | conjecture | all");
  family_opts(ve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }
  cfg.exc_given = !cfg.exc.empty() || (en->count("--exc") + co->count("--exc")) > 0;
  for (auto *s : {en, co, orc, ve})
    if (s->parsed())
      cfg.command = s->get_name();

  try {
    EnumOptions opt;
    opt.threads = cfg.threads;
    opt.dart_max = cfg.dart_max;
    Enumerator enumerator(opt);
    if (cfg.command == "enumerate")
      return cmd_enumerate(cfg, enumerator);
    if (cfg.command == "correlator")
      return cmd_correlator(cfg, enumerator);
    if (cfg.command == "oracle")
      return cmd_oracle(cfg);
    return cmd_verify(cfg, enumerator);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return Usage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return Usage;
  } catch (const BoundsExceeded &e) {
    std::cerr << "bounds: " << e.what() << " (" << e.required << ")\n";
    return Bounds;
  } catch (const oracle::ResourceCap &e) {
    std::cerr << "bounds: " << e.what() << "\n";
    return Bounds;
  } catch (const SpuriousMonomial &e) {
    std::cerr << "spurious monomial: " << e.what() << "\n";
    return Internal;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Internal;
  }
}
