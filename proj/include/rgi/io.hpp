#pragma once

#include "amplitude.hpp"
#include "enumerate.hpp"
#include "table.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <sstream>
#include <string>

namespace rgi::io {

using json = nlohmann::json;

inline constexpr const char *tool_version = "0.1.0";

inline std::string utc_timestamp()
{
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json npoly_json(const NPoly &p) { return p.to_strings(); }

inline NPoly npoly_from_json(const json &j) { return NPoly::from_strings(j.get<std::vector<std::string>>()); }

inline json graph_json(const RibbonGraph &G)
{
  json tags = json::array();
  for (auto &t : G.tag)
    tags.push_back({static_cast<int>(t.kind), t.label});
  std::vector<int> marked(G.marked.begin(), G.marked.end());
  return {{"kind", kind_name(G.kind)}, {"sigma", G.sigma}, {"alpha", G.alpha}, {"tags", tags}, {"marked", marked}};
}

inline RibbonGraph graph_from_json(const json &j)
{
  RibbonGraph G;
  G.sigma = j.at("sigma").get<std::vector<int>>();
  G.alpha = j.at("alpha").get<std::vector<int>>();
  for (auto &t : j.at("tags"))
    G.tag.push_back({static_cast<FaceKind>(t.at(0).get<int>()), t.at(1).get<int>()});
  for (int m : j.at("marked").get<std::vector<int>>())
    G.marked.push_back(static_cast<std::uint8_t>(m));
  auto k = j.at("kind").get<std::string>();
  G.kind = k == "ghost" ? GraphKind::Ghost : k == "exceptional" ? GraphKind::Exceptional : GraphKind::Regular;
  return G;
}

inline json nodal_json(const NodalGraph &ng)
{
  json comps = json::array();
  for (auto &c : ng.components)
    comps.push_back(graph_json(c));
  json nodes = json::array();
  for (auto &n : ng.nodes)
    nodes.push_back({n.legal.comp, n.legal.vertex, n.illegal.comp, n.illegal.vertex});
  return {{"components", comps}, {"nodes", nodes}};
}

inline NodalGraph nodal_from_json(const json &j)
{
  NodalGraph ng;
  for (auto &c : j.at("components"))
    ng.components.push_back(graph_from_json(c));
  for (auto &n : j.at("nodes"))
    ng.nodes.push_back({{n.at(0).get<int>(), n.at(1).get<int>()}, {n.at(2).get<int>(), n.at(3).get<int>()}});
  return ng;
}

inline json profile_json(const SmoothingProfile &p)
{
  return {{"b", p.b}, {"kbar", p.kbar}, {"genus", p.genus}, {"exc", p.exc}};
}

inline json catalog_json(const Catalog<RibbonGraph> &c)
{
  json items = json::array();
  for (std::size_t i = 0; i < c.items.size(); ++i)
    items.push_back({{"code", code_hex(c.codes[i])},
                     {"automorphisms", automorphism_order(c.items[i])},
                     {"graph", graph_json(c.items[i])}});
  return items;
}

inline json catalog_json(const Catalog<Enumerator::NodalEntry> &c)
{
  json items = json::array();
  for (std::size_t i = 0; i < c.items.size(); ++i)
    items.push_back({{"code", code_hex(c.codes[i])},
                     {"automorphisms", nodal_aut_order(c.items[i].graph)},
                     {"profile", profile_json(c.items[i].profile)},
                     {"graph", nodal_json(c.items[i].graph)}});
  return items;
}

inline json key_json(const CorrelatorKey &k)
{
  json j = {{"family", family_name(k.family)}, {"genus", k.genus}, {"taus", k.taus}};
  switch (k.family) {
  case Family::Extended: j["sigmas"] = k.sigmas; break;
  case Family::Refined:
    j["k"] = k.k;
    j["b"] = k.b;
    break;
  case Family::VeryRefined: j["kbar"] = k.kbar; break;
  case Family::KP: break;
  }
  return j;
}

inline json table_json(const CorrelatorTable &T)
{
  json entries = json::array();
  for (auto &kv : T.entries) {
    json e = key_json(kv.first);
    e["value"] = npoly_json(kv.second);
    e["rendered"] = kv.second.render();
    entries.push_back(std::move(e));
  }
  return entries;
}

inline CorrelatorTable table_from_json(const json &entries)
{
  CorrelatorTable T;
  for (auto &e : entries) {
    CorrelatorKey k;
    auto f = e.at("family").get<std::string>();
    k.family = f == "extended"  ? Family::Extended
               : f == "refined" ? Family::Refined
               : f == "kp"      ? Family::KP
                                : Family::VeryRefined;
    k.genus = e.at("genus").get<int>();
    k.taus = e.at("taus").get<std::vector<int>>();
    if (e.contains("sigmas")) {
      k.sigmas = e["sigmas"].get<std::vector<int>>();
      k.k = static_cast<int>(k.sigmas.size());
    }
    if (e.contains("k"))
      k.k = e["k"].get<int>();
    if (e.contains("b"))
      k.b = e["b"].get<int>();
    if (e.contains("kbar")) {
      k.kbar = e["kbar"].get<std::vector<int>>();
      k.b = static_cast<int>(k.kbar.size());
      k.k = 0;
      for (int x : k.kbar)
        k.k += x;
    }
    T.entries[k] = npoly_from_json(e.at("value"));
  }
  return T;
}

inline std::string join(const std::vector<int> &v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline std::string table_csv(const CorrelatorTable &T)
{
  std::ostringstream os;
  os << "family,genus,taus,sigmas,kbar,k,b,value\n";
  for (auto &kv : T.entries) {
    const auto &k = kv.first;
    os << family_name(k.family) << "," << k.genus << "," << join(k.taus) << "," << join(k.sigmas) << ","
       << join(k.kbar) << "," << k.k << "," << (k.family == Family::Refined || k.family == Family::VeryRefined ? k.b : 0)
       << ",\"" << kv.second.render() << "\"\n";
  }
  return os.str();
}

inline json report_json(const VerifyReport &r)
{
  auto list = [](const std::vector<VerifyFailure> &v) {
    json a = json::array();
    for (auto &f : v)
      a.push_back({{"key", f.key}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    return a;
  };
  json j = {{"identity", r.identity}, {"checked", r.checked}, {"failures", list(r.failures)}};
  if (!r.informational.empty())
    j["informational"] = list(r.informational);
  return j;
}

// Wraps a payload with the tool metadata; the timestamp is the only varying field.
inline json envelope(const std::string &command, const json &config, const json &bounds)
{
  return {{"tool", "rgi"}, {"version", tool_version}, {"command", command},
          {"config", config}, {"bounds", bounds}, {"timestamp", utc_timestamp()}};
}

} // namespace rgi::io
