#include "pti/search.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "pti/linalg.hpp"
#include "pti/seeding.hpp"

namespace pti {

void SearchConfig::validate() const {
  if (dims.m < 1 || dims.n < 1) throw std::invalid_argument("search: dims must be positive");
  if (samples < 1) throw std::invalid_argument("search: samples >= 1");
  if (rank_set.empty()) throw std::invalid_argument("search: rank set is empty");
  for (std::size_t r : rank_set)
    if (r < 1 || r + kernel_products > dims.total())
      throw std::invalid_argument("search: rank " + std::to_string(r) + " outside [1, " +
                                  std::to_string(dims.total() - kernel_products) + "]");
  if (workers < 1) throw std::invalid_argument("search: workers >= 1");
  if (!(tol_zero > 0.0)) throw std::invalid_argument("search: tol_zero must be positive");
}

std::string SearchConfig::canonical() const {
  std::ostringstream s;
  char tol[32];
  std::snprintf(tol, sizeof tol, "%.17g", tol_zero);
  s << "pti-search-v1;dims=" << dims.m << "x" << dims.n << ";ranks=";
  for (std::size_t k = 0; k < rank_set.size(); ++k) s << (k ? "," : "") << rank_set[k];
  s << ";ensemble=" << to_string(ensemble) << ";samples=" << samples << ";seed=" << seed << ";tol=" << tol
    << ";kernel_products=" << kernel_products;
  return s.str();
}

std::string SearchConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t SearchRecord::total() const {
  std::uint64_t t = marginal;
  for (const auto& [k, v] : histogram) t += v;
  return t;
}

bool operator==(const SearchRecord& a, const SearchRecord& b) {
  auto same_alarm = [](const Alarm& x, const Alarm& y) {
    return x.inertia == y.inertia && x.sample_index == y.sample_index && x.sample_seed == y.sample_seed && x.rank == y.rank;
  };
  if (a.alarms.size() != b.alarms.size()) return false;
  for (std::size_t k = 0; k < a.alarms.size(); ++k)
    if (!same_alarm(a.alarms[k], b.alarms[k])) return false;
  return a.config.canonical() == b.config.canonical() && a.config_hash == b.config_hash && a.histogram == b.histogram &&
         a.marginal == b.marginal && a.marginal_histogram == b.marginal_histogram;
}

namespace {

using nlohmann::json;

json inertia_json(const Inertia& i) { return json::array({i.minus, i.zero, i.plus}); }
Inertia inertia_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()}; }

json histogram_json(const Histogram& h) {
  json arr = json::array();
  for (const auto& [k, v] : h) arr.push_back({{"inertia", inertia_json(k)}, {"count", v}});
  return arr;
}

Histogram histogram_from(const json& j) {
  Histogram h;
  for (const json& e : j) h[inertia_from(e.at("inertia"))] = e.at("count").get<std::uint64_t>();
  return h;
}

// Orthonormal basis (columns) of the span of the given vectors.
std::vector<std::vector<cplx>> orthonormalize(std::vector<std::vector<cplx>> vs) {
  std::vector<std::vector<cplx>> q;
  for (auto& v : vs) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : q) {
        const cplx p = inner(u, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * u[i];
      }
    const double nv = norm2(v);
    if (nv < 1e-10) continue;
    for (cplx& z : v) z /= nv;
    q.push_back(std::move(v));
  }
  return q;
}

struct Partial {
  Histogram histogram;
  Histogram marginal_histogram;
  std::uint64_t marginal = 0;
  std::vector<Alarm> alarms;
};

Partial run_range(const SearchConfig& cfg, const std::set<Inertia>& alarm_set, std::uint64_t begin, std::uint64_t end) {
  Partial p;
  for (std::uint64_t i = begin; i < end; ++i) {
    const SampleOutcome o = classify_sample(cfg, i);
    if (o.marginal) {
      ++p.marginal;
      ++p.marginal_histogram[o.inertia];
      continue;
    }
    ++p.histogram[o.inertia];
    if (alarm_set.count(o.inertia)) p.alarms.push_back({o.inertia, i, o.sample_seed, o.rank});
  }
  return p;
}

}  // namespace

std::string SearchRecord::to_json_line() const {
  json j;
  j["config"] = {{"dims", {config.dims.m, config.dims.n}},
                 {"ranks", config.rank_set},
                 {"ensemble", to_string(config.ensemble)},
                 {"samples", config.samples},
                 {"seed", config.seed},
                 {"tol_zero", config.tol_zero},
                 {"kernel_products", config.kernel_products}};
  j["config_hash"] = config_hash;
  j["histogram"] = histogram_json(histogram);
  j["marginal"] = marginal;
  j["marginal_histogram"] = histogram_json(marginal_histogram);
  json alarms_json = json::array();
  for (const Alarm& a : alarms)
    alarms_json.push_back({{"inertia", inertia_json(a.inertia)},
                           {"sample", a.sample_index},
                           {"seed_path", {config.seed, a.sample_index}},
                           {"sample_seed", a.sample_seed},
                           {"rank", a.rank}});
  j["alarms"] = alarms_json;
  return j.dump();
}

SearchRecord SearchRecord::from_json_line(const std::string& line) {
  SearchRecord r;
  try {
    const json j = json::parse(line);
    const json& c = j.at("config");
    r.config.dims = {c.at("dims").at(0).get<std::size_t>(), c.at("dims").at(1).get<std::size_t>()};
    r.config.rank_set = c.at("ranks").get<std::vector<std::size_t>>();
    r.config.ensemble = parse_ensemble(c.at("ensemble").get<std::string>());
    r.config.samples = c.at("samples").get<std::uint64_t>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.tol_zero = c.at("tol_zero").get<double>();
    r.config.kernel_products = c.value("kernel_products", std::size_t{0});
    r.config_hash = j.at("config_hash").get<std::string>();
    r.histogram = histogram_from(j.at("histogram"));
    r.marginal = j.at("marginal").get<std::uint64_t>();
    r.marginal_histogram = histogram_from(j.value("marginal_histogram", json::array()));
    for (const json& a : j.at("alarms"))
      r.alarms.push_back({inertia_from(a.at("inertia")), a.at("sample").get<std::uint64_t>(),
                          a.at("sample_seed").get<std::uint64_t>(), a.at("rank").get<std::size_t>()});
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed search record: ") + e.what());
  }
  return r;
}

BipartiteState search_sample(const SearchConfig& cfg, std::uint64_t index) {
  const std::uint64_t s = mix_seed(cfg.seed, index);
  const std::size_t rank = cfg.rank_set[index % cfg.rank_set.size()];
  if (cfg.kernel_products == 0) return random_state(cfg.dims, rank, cfg.ensemble, s);

  const BipartiteDims d = cfg.dims;
  std::mt19937_64 gen(mix_seed(s, 1));
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](std::size_t len) {
    std::vector<cplx> v(len);
    for (cplx& z : v) z = cplx(normal(gen), cfg.ensemble == Ensemble::complex ? normal(gen) : 0.0);
    return v;
  };
  std::vector<std::vector<cplx>> products;
  for (std::size_t k = 0; k < cfg.kernel_products; ++k) {
    const std::vector<cplx> a = draw(d.m), b = draw(d.n);
    std::vector<cplx> v(d.total());
    for (std::size_t i = 0; i < d.m; ++i)
      for (std::size_t j = 0; j < d.n; ++j) v[d.index(i, j)] = a[i] * b[j];
    products.push_back(std::move(v));
  }
  const auto q = orthonormalize(std::move(products));
  std::vector<cplx> r = random_factor(d, rank, cfg.ensemble, s);
  const std::size_t dim = d.total();
  for (std::size_t c = 0; c < rank; ++c) {
    std::span<cplx> col(&r[c * dim], dim);
    for (const auto& u : q) {
      const cplx p = inner(u, col);
      for (std::size_t i = 0; i < dim; ++i) col[i] -= p * u[i];
    }
  }
  ComplexMatrix rho = gram(r, dim, rank);
  const double tr = rho.trace().real();
  for (cplx& z : rho.data()) z /= tr;
  return BipartiteState::unchecked(d, std::move(rho));
}

SampleOutcome classify_sample(const SearchConfig& cfg, std::uint64_t index) {
  SampleOutcome o;
  o.sample_seed = mix_seed(cfg.seed, index);
  o.rank = cfg.rank_set[index % cfg.rank_set.size()];
  const std::vector<double> ev = herm_eigvals(partial_transpose(search_sample(cfg, index)));
  const InertiaResult mid = classify_eigenvalues(ev, cfg.tol_zero);
  const Inertia lo = classify_eigenvalues(ev, cfg.tol_zero / 10.0).inertia;
  const Inertia hi = classify_eigenvalues(ev, cfg.tol_zero * 10.0).inertia;
  o.inertia = mid.inertia;
  o.marginal = !(lo == mid.inertia && hi == mid.inertia);
  return o;
}

SearchRecord run_search(const SearchConfig& cfg, const std::set<Inertia>& alarm_set) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const unsigned w = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.samples));
  std::vector<Partial> parts(w);
  auto bounds = [&](unsigned k) { return cfg.samples * k / w; };
  if (w == 1) {
    parts[0] = run_range(cfg, alarm_set, 0, cfg.samples);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    for (unsigned k = 0; k < w; ++k)
      threads.emplace_back([&, k] {
        try {
          parts[k] = run_range(cfg, alarm_set, bounds(k), bounds(k + 1));
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    for (std::thread& t : threads) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SearchRecord rec;
  rec.config = cfg;
  rec.config_hash = cfg.hash();
  // Partitions are contiguous and in order, so concatenation keeps alarms sorted.
  for (const Partial& p : parts) {
    for (const auto& [k, v] : p.histogram) rec.histogram[k] += v;
    for (const auto& [k, v] : p.marginal_histogram) rec.marginal_histogram[k] += v;
    rec.marginal += p.marginal;
    rec.alarms.insert(rec.alarms.end(), p.alarms.begin(), p.alarms.end());
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

BipartiteState replay(const SearchRecord& record, std::size_t alarm_index) {
  if (record.config.hash() != record.config_hash)
    throw std::invalid_argument("replay: stale record, config hash " + record.config_hash + " does not match " +
                                record.config.hash());
  if (record.alarms.empty()) throw std::invalid_argument("replay: record has no alarms");
  if (alarm_index >= record.alarms.size())
    throw std::invalid_argument("replay: alarm index " + std::to_string(alarm_index) + " out of range (" +
                                std::to_string(record.alarms.size()) + " alarms)");
  const Alarm& a = record.alarms[alarm_index];
  if (mix_seed(record.config.seed, a.sample_index) != a.sample_seed)
    throw std::invalid_argument("replay: alarm seed path does not match the record's master seed");
  return search_sample(record.config, a.sample_index);
}

std::set<Inertia> parse_alarm_set(const std::string& text) {
  std::set<Inertia> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.insert(Inertia::parse(item));
  }
  return out;
}

std::vector<std::size_t> parse_rank_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rank '" + item + "'");
    }
    if (used != item.size() || v < 1) throw std::invalid_argument("bad rank '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw std::invalid_argument("empty rank list");
  return out;
}

std::string format_histogram(const SearchRecord& r) {
  std::ostringstream s;
  s << "v- v0 v+  count\n";
  for (const auto& [k, v] : r.histogram) s << k.to_plain() << "  " << v << "\n";
  s << "marginal  " << r.marginal << "\n";
  s << "alarms  " << r.alarms.size() << "\n";
  return s.str();
}

}  // namespace pti
