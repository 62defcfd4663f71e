#include "minstate/bench.hpp"

#include <time.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "minstate/clique_cover.hpp"
#include "minstate/cssr.hpp"
#include "minstate/deadline.hpp"
#include "minstate/error.hpp"
#include "minstate/exact_opt.hpp"

namespace minstate {

Method parse_method(const std::string& name) {
  if (name == "cssr") return Method::cssr;
  if (name == "ip") return Method::ip;
  if (name == "clique") return Method::clique;
  throw InvalidConfig("unknown method '" + name + "' (expected cssr, ip or clique)");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::cssr: return "cssr";
    case Method::ip: return "ip";
    case Method::clique: return "clique";
  }
  return "?";
}

void BenchConfig::validate() const {
  if (methods.empty()) throw InvalidConfig("bench needs at least one method");
  if (repetitions < 1) throw InvalidConfig("repetitions must be >= 1");
  if (!std::is_sorted(lengths.begin(), lengths.end())) {
    throw InvalidConfig("lengths must be ascending");
  }
  for (std::size_t k : alphabet_sizes)
    if (k < 2) throw InvalidConfig("alphabet sizes must be >= 2");
  for (std::size_t n : lengths)
    if (n < L + 1) throw InvalidConfig("every length must exceed L");
  if (L < 1) throw InvalidConfig("L must be >= 1");
  if (!(timeout_seconds > 0)) throw InvalidConfig("timeout must be positive");
  if (threads < 1) throw InvalidConfig("threads must be >= 1");
  if (timing_repeats < 1) throw InvalidConfig("timing_repeats must be >= 1");
  test.validate();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidConfig("bad value '" + text + "' for " + key);
  }
  return value;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

}  // namespace

BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "methods") {
      cfg.methods.clear();
      for (const auto& m : split_list(value)) cfg.methods.push_back(parse_method(m));
    } else if (key == "alphabet_sizes") {
      cfg.alphabet_sizes.clear();
      for (const auto& v : split_list(value))
        cfg.alphabet_sizes.push_back(parse_number<std::size_t>(key, v));
    } else if (key == "lengths") {
      cfg.lengths.clear();
      for (const auto& v : split_list(value)) cfg.lengths.push_back(parse_number<std::size_t>(key, v));
    } else if (key == "L") {
      cfg.L = parse_number<std::size_t>(key, value);
    } else if (key == "alpha") {
      cfg.test.alpha = parse_number<double>(key, value);
    } else if (key == "test") {
      cfg.test.test = parse_test_kind(value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "repetitions") {
      cfg.repetitions = parse_number<std::size_t>(key, value);
    } else if (key == "timeout") {
      cfg.timeout_seconds = parse_number<double>(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_number<std::size_t>(key, value);
    } else if (key == "timing_repeats") {
      cfg.timing_repeats = parse_number<std::size_t>(key, value);
    } else {
      throw InvalidConfig("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

Pfsa random_source(std::size_t alphabet_size, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> num_states(2, 4);
  const std::size_t n = num_states(gen);
  std::uniform_int_distribution<std::size_t> target(0, n - 1);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<std::string> symbols;
  for (std::size_t a = 0; a < alphabet_size; ++a) symbols.push_back(std::to_string(a));
  std::vector<Transition> transitions;
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<double> w(alphabet_size);
    double sum = 0.0;
    for (auto& x : w) sum += (x = weight(gen));
    for (std::size_t a = 0; a < alphabet_size; ++a) {
      transitions.push_back({q, static_cast<Symbol>(a), target(gen), w[a] / sum});
    }
  }
  return Pfsa(Alphabet(std::move(symbols)), std::vector<std::vector<History>>(n),
              std::move(transitions));
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t alphabet, std::size_t length,
                         std::size_t rep) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ alphabet);
  h = splitmix64(h ^ length);
  return splitmix64(h ^ rep);
}

BenchRow run_method(Method method, const SymbolSequence& seq, const BenchConfig& cfg) {
  BenchRow row{method, seq.alphabet.size(), seq.size(), 0, std::nullopt, std::nullopt, ""};
  const Deadline deadline(std::chrono::duration_cast<Deadline::Clock::duration>(
      std::chrono::duration<double>(cfg.timeout_seconds)));
  try {
    for (std::size_t r = 0; r < cfg.timing_repeats; ++r) {
      const double start = thread_cpu_seconds();
      const WindowCounts wc(seq, cfg.L);
      std::size_t states = 0;
      switch (method) {
        case Method::cssr:
          states = cssr(wc, seq.alphabet, CssrConfig{cfg.L, cfg.test}).num_states();
          break;
        case Method::ip: {
          const auto graph = compatibility_graph(wc, cfg.test);
          const auto succ = successor_table(graph.vertices, wc);
          states = solve_msdpfsa(graph, succ, deadline).optimum;
          break;
        }
        case Method::clique:
          states = clique_pipeline(wc, seq.alphabet, cfg.L, cfg.test, deadline).machine.num_states();
          break;
      }
      const double elapsed = thread_cpu_seconds() - start;
      row.seconds = row.seconds ? std::min(*row.seconds, elapsed) : elapsed;
      row.states = states;
    }
  } catch (const Timeout&) {
    row.seconds.reset();
    row.states.reset();
    row.flag = "timeout";
  } catch (const Error&) {
    row.seconds.reset();
    row.states.reset();
    row.flag = "error";
  }
  return row;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  cfg.validate();
  struct Point {
    std::size_t alphabet, length, rep;
  };
  std::vector<Point> points;
  for (std::size_t k : cfg.alphabet_sizes)
    for (std::size_t n : cfg.lengths)
      for (std::size_t r = 0; r < cfg.repetitions; ++r) points.push_back({k, n, r});

  std::vector<std::vector<BenchRow>> results(points.size());
  auto run_point = [&](std::size_t idx) {
    const auto& pt = points[idx];
    const std::uint64_t s = point_seed(cfg.seed, pt.alphabet, pt.length, pt.rep);
    const auto source = random_source(pt.alphabet, s);
    const auto seq = sample(source, pt.length, splitmix64(s));
    auto& rows = results[idx];
    for (Method m : cfg.methods) {
      rows.push_back(run_method(m, seq, cfg));
      rows.back().rep = pt.rep;
    }
    auto find = [&](Method m) -> BenchRow* {
      for (auto& r : rows)
        if (r.method == m && r.states) return &r;
      return nullptr;
    };
    BenchRow* ip = find(Method::ip);
    BenchRow* cs = find(Method::cssr);
    BenchRow* cl = find(Method::clique);
    if (ip && cs && *ip->states > *cs->states) ip->flag = "bound_violation";
    if (ip && cl && *cl->states != *ip->states) cl->flag = "mismatch";
  };

  const std::size_t workers = std::min(cfg.threads, std::max<std::size_t>(points.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) run_point(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<BenchRow> out;
  for (auto& rows : results)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

std::string to_csv(const std::vector<BenchRow>& rows, const BenchConfig& cfg) {
  std::ostringstream out;
  out << "# source: seeded random deterministic pFSA (2-4 states, uniform targets, "
         "symbol weights U(0.05,1) normalized); seed="
      << cfg.seed << " L=" << cfg.L << " alpha=" << cfg.test.alpha
      << " test=" << to_string(cfg.test.test) << "\n";
  out << kCsvHeader << '\n';
  char buf[32];
  for (const auto& r : rows) {
    out << to_string(r.method) << ',' << r.alphabet << ',' << r.length << ',' << r.rep << ',';
    if (r.seconds) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.seconds);
      out << buf;
    } else if (r.flag == "timeout") {
      out << "timeout";
    }
    out << ',';
    if (r.states) out << *r.states;
    out << ',' << r.flag << '\n';
  }
  return out.str();
}

}  // namespace minstate
