#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "quasiwide/quasiwide.hpp"

using namespace quasiwide;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitAlgorithm = 2;
constexpr int kExitNo = 3;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  bool deterministic = false;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("quasiwide");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("QUASIWIDE_LOG")) {
    level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string(env) != "off") level = spdlog::level::warn;
  }
  spdlog::set_level(level);
}

Graph load_graph(const std::string& path) {
  auto file = read_edge_list(path);
  spdlog::info("loaded {} ({} vertices, {} edges)", path, file.graph.num_vertices(), file.graph.num_edges());
  return std::move(file.graph);
}

std::vector<Vertex> load_ids(const std::string& spec, const Graph& g) {
  std::vector<Vertex> ids;
  if (spec == "all") {
    ids.resize(g.num_vertices());
    for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = static_cast<Vertex>(v);
  } else {
    ids = read_id_list(spec);
  }
  for (Vertex v : ids) g.check(v);
  return ids;
}

std::vector<Vertex> parse_inline_ids(const std::string& text) { return parse_id_list_text(text); }

json input_summary(const Graph& g) {
  return json{{"n", g.num_vertices()}, {"m", g.num_edges()}, {"degeneracy", g.degeneracy()}};
}

json distance_json(const std::vector<Distance>& v) {
  json out = json::array();
  for (const auto& d : v) {
    if (d) {
      out.push_back(*d);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2);
  std::cout << text << '\n';
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << text << '\n';
  }
}

json failure_json(const UqwFailure& f) {
  return json{{"round", f.round}, {"sequence", f.sequence}, {"candidates", f.candidates}};
}

UqwConfig make_uqw_config(std::size_t s_max, double theta, std::optional<std::uint32_t> max_rounds,
                          bool check_rounds) {
  UqwConfig cfg;
  cfg.s_max = s_max;
  cfg.theta = theta;
  cfg.max_rounds = max_rounds;
  cfg.check_rounds = check_rounds;
  cfg.validate();
  return cfg;
}

// Options shared by commands that wrap the uqw splitter.
struct UqwFlags {
  std::size_t s_max = 16;
  double theta = 0.5;
  std::optional<std::uint32_t> max_rounds;
  bool check_rounds = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--s-max", s_max, "Deletion budget of the splitter")->capture_default_str();
    cmd->add_option("--theta", theta, "Heavy-vertex fraction")->capture_default_str();
    cmd->add_option("--max-rounds", max_rounds, "Override the number of splitter rounds");
    cmd->add_flag("--check-rounds", check_rounds, "Check the per-round independence invariant");
  }
  UqwConfig config() const { return make_uqw_config(s_max, theta, max_rounds, check_rounds); }
};

// ---- gen ------------------------------------------------------------------

struct GenCmd {
  std::string spec;
  std::string out;

  int run(const GlobalOptions& global) const {
    GenSpec gs = GenSpec::parse(spec);
    bool seeded = gs.family == Family::RandomBoundedDegree || gs.family == Family::RandomDegenerate;
    if (seeded && global.seed) gs.params.back() = *global.seed;
    Graph g = generate(gs);
    std::vector<std::string> header{"generated " + gs.to_string()};
    if (out.empty()) {
      write_edge_list(std::cout, g, header);
    } else {
      std::ofstream file(out, std::ios::trunc);
      if (!file) throw InputError("cannot write '" + out + "'");
      write_edge_list(file, g, header);
    }
    return kExitOk;
  }
};

// ---- uqw ------------------------------------------------------------------

struct UqwCmd {
  std::string graph;
  std::string A = "all";
  std::uint32_t r = 1;
  std::size_t m = 1;
  UqwFlags flags;
  std::string report;

  int run(const GlobalOptions&) const {
    Graph g = load_graph(graph);
    auto ids = load_ids(A, g);
    json out{{"command", "uqw"},
             {"args", {{"graph", graph}, {"A", A}, {"r", r}, {"m", m}, {"s_max", flags.s_max}, {"theta", flags.theta}}},
             {"input", input_summary(g)}};
    Stopwatch sw;
    UqwResult res = uqw_split(g, ids, r, m, flags.config());
    double elapsed = sw.ms();
    json rounds = json::array();
    for (const auto& rd : res.rounds) {
      rounds.push_back(json{{"index", rd.index},
                            {"seq_before", rd.seq_before},
                            {"seq_after", rd.seq_after},
                            {"s_added", rd.s_added},
                            {"contracted_n", rd.contracted_n},
                            {"b_size", rd.b_size}});
    }
    int code = kExitOk;
    if (!res.ok()) {
      out["result"] = json{{"failure", failure_json(*res.failure)}, {"rounds", rounds}};
      out["verified"] = false;
      code = kExitAlgorithm;
      spdlog::error("uqw: deletion set exceeded s_max in round {}", res.failure->round);
    } else {
      bool verified = uqw_verify(g, res, ids, r);
      out["result"] = json{{"S", res.S},
                           {"B", res.B},
                           {"s_size", res.S.size()},
                           {"b_size", res.B.size()},
                           {"prefix_used", res.prefix_used},
                           {"rounds", rounds}};
      out["verified"] = verified;
      if (!verified) {
        spdlog::error("uqw: B is not {}-independent in G - S", r);
        code = kExitAlgorithm;
      } else if (res.B.size() < m) {
        spdlog::warn("uqw: only {} of the requested {} vertices survived", res.B.size(), m);
      }
    }
    out["timings_ms"] = json{{"uqw", elapsed}};
    emit(out, report);
    return code;
  }
};

// ---- indiscernible ----------------------------------------------------------

struct IndiscernibleCmd {
  std::string graph;
  std::string seq = "all";
  std::uint32_t k = 2;
  bool edge_only = false;
  std::size_t m = 1;
  std::size_t verify_max_len = 40;
  std::string report;

  int run(const GlobalOptions&) const {
    Graph g = load_graph(graph);
    auto ids = load_ids(seq, g);
    if (ids.empty()) throw InputError("indiscernible: empty sequence");
    Delta delta = edge_only ? Delta::edge_only() : Delta::delta_k(k);
    json names = json::array();
    for (const auto& f : delta.formulas()) names.push_back(f.name());
    json out{{"command", "indiscernible"},
             {"args", {{"graph", graph}, {"seq", seq}, {"delta", names}, {"m", m}}},
             {"input", input_summary(g)}};
    Stopwatch sw;
    auto result = extract_indiscernible(g, ids, delta, m);
    double extract_ms = sw.ms();
    json verified = nullptr;
    double verify_ms = 0;
    if (result.size() <= verify_max_len) {
      Stopwatch vw;
      verified = is_indiscernible(g, result, delta);
      verify_ms = vw.ms();
    } else {
      spdlog::warn("indiscernible: sequence of length {} exceeds --verify-max-len, verification skipped", result.size());
    }
    out["result"] = json{{"sequence", result}, {"length", result.size()}};
    out["verified"] = verified;
    out["timings_ms"] = json{{"extract", extract_ms}, {"verify", verify_ms}};
    emit(out, report);
    return verified.is_boolean() && !verified.get<bool>() ? kExitAlgorithm : kExitOk;
  }
};

// ---- ladder -----------------------------------------------------------------

struct LadderCmd {
  std::string graph;
  std::size_t max_k = 6;
  std::string report;

  int run(const GlobalOptions&) const {
    Graph g = load_graph(graph);
    Stopwatch sw;
    std::size_t index = ladder_index(g, max_k);
    json out{{"command", "ladder"},
             {"args", {{"graph", graph}, {"max_k", max_k}}},
             {"input", input_summary(g)},
             {"result", {{"ladder_index", index}, {"capped", index == max_k}}},
             {"timings_ms", {{"ladder", sw.ms()}}}};
    emit(out, report);
    return kExitOk;
  }
};

// ---- core / kernelize -------------------------------------------------------

struct CoreFlags {
  std::uint32_t r = 1;
  std::uint32_t k = 1;
  std::optional<std::size_t> ell;
  bool single = false;
  std::size_t max_retries = 3;
  UqwFlags uqw;

  void add(CLI::App* cmd) {
    cmd->add_option("--r", r, "Domination radius")->required();
    cmd->add_option("--k", k, "Solution size")->required();
    cmd->add_option("--ell", ell, "Core-size threshold (default max(4(k+2)(2r+1)^2, 64))");
    cmd->add_flag("--single", single, "Remove one dominatee per step instead of a bucket");
    cmd->add_option("--max-retries", max_retries, "Doublings of A when no bucket is large enough")
        ->capture_default_str();
    uqw.add(cmd);
  }

  CoreConfig config() const {
    CoreConfig cfg;
    cfg.r = r;
    cfg.k = k;
    cfg.ell = ell;
    cfg.batch = !single;
    cfg.max_retries = max_retries;
    cfg.uqw = uqw.config();
    cfg.validate();
    return cfg;
  }
};

// Re-checks every removal witness: the bucket lies in the current Z, is
// 2r-independent once S is deleted, has the recorded distance vector and
// keeps k+1 members after the removal.
bool verify_core(const Graph& g, const DominationCore& core, const CoreConfig& cfg) {
  std::vector<Vertex> Z(g.num_vertices());
  for (std::size_t v = 0; v < Z.size(); ++v) Z[v] = static_cast<Vertex>(v);
  for (const auto& step : core.removal_log) {
    const auto& wit = step.witness;
    if (!std::includes(Z.begin(), Z.end(), wit.bucket.begin(), wit.bucket.end())) return false;
    if (!std::includes(wit.bucket.begin(), wit.bucket.end(), step.removed.begin(), step.removed.end())) return false;
    if (wit.bucket.size() < step.removed.size() + cfg.k + 1) return false;
    if (!is_r_independent(g, wit.bucket, 2 * cfg.r, wit.S)) return false;
    for (Vertex b : wit.bucket) {
      if (distance_vector(g, b, wit.S, 2 * cfg.r).entries != wit.vector) return false;
    }
    std::vector<Vertex> next;
    std::set_difference(Z.begin(), Z.end(), step.removed.begin(), step.removed.end(), std::back_inserter(next));
    Z = std::move(next);
  }
  return Z == core.Z;
}

json core_json(const DominationCore& core, bool with_steps) {
  json out{{"Z", core.Z}, {"z_size", core.Z.size()}, {"steps", core.removal_log.size()}, {"stop_reason", core.stop_reason}};
  if (with_steps) {
    json steps = json::array();
    for (const auto& step : core.removal_log) {
      steps.push_back(json{{"removed", step.removed},
                           {"S", step.witness.S},
                           {"bucket", step.witness.bucket},
                           {"vector", distance_json(step.witness.vector)}});
    }
    out["removal_log"] = steps;
  }
  return out;
}

json config_json(const std::string& graph, const CoreConfig& cfg) {
  return json{{"graph", graph},
              {"r", cfg.r},
              {"k", cfg.k},
              {"ell", cfg.effective_ell()},
              {"batch", cfg.batch},
              {"s_max", cfg.uqw.s_max},
              {"theta", cfg.uqw.theta}};
}

struct CoreCmd {
  std::string graph;
  CoreFlags flags;
  std::string report;

  int run(const GlobalOptions&) const {
    Graph g = load_graph(graph);
    CoreConfig cfg = flags.config();
    Stopwatch sw;
    auto core = domination_core(g, cfg);
    double core_ms = sw.ms();
    Stopwatch vw;
    bool verified = verify_core(g, core, cfg);
    json out{{"command", "core"},
             {"args", config_json(graph, cfg)},
             {"input", input_summary(g)},
             {"result", core_json(core, true)},
             {"verified", verified},
             {"timings_ms", {{"core", core_ms}, {"verify", vw.ms()}}}};
    emit(out, report);
    return verified ? kExitOk : kExitAlgorithm;
  }
};

struct KernelizeCmd {
  std::string graph;
  CoreFlags flags;
  std::string output;
  bool verify = false;
  std::size_t verify_max_n = 120;
  std::string report;

  int run(const GlobalOptions&) const {
    Graph g = load_graph(graph);
    CoreConfig cfg = flags.config();
    Stopwatch total;
    Stopwatch sw;
    auto core = domination_core(g, cfg);
    double core_ms = sw.ms();
    sw = Stopwatch();
    auto reps = reduce_dominators(g, core.Z, cfg.r);
    double reduce_ms = sw.ms();
    sw = Stopwatch();
    auto kernel = build_kernel(g, core.Z, reps, cfg.r, cfg.k);
    double build_ms = sw.ms();
    bool core_ok = verify_core(g, core, cfg);

    if (!output.empty()) {
      std::ofstream file(output, std::ios::trunc);
      if (!file) throw InputError("cannot write '" + output + "'");
      write_kernel(file, kernel);
    }
    bool shrunk = core.Z.size() < g.num_vertices();
    json result{{"z_size", core.Z.size()},
                {"y_size", reps.Y.size()},
                {"h_size", kernel.H.num_vertices()},
                {"h_edges", kernel.H.num_edges()},
                {"k_new", kernel.k_new},
                {"size_bound", kernel.size_bound(core.Z.size(), reps.Y.size())},
                {"projection_ok", kernel.projection_ok},
                {"core_steps", core.removal_log.size()},
                {"stop_reason", core.stop_reason},
                {"shrunk", shrunk}};
    if (!shrunk) result["note"] = "no shrinkage: the core is all of V(G)";
    if (!output.empty()) result["kernel_file"] = output;

    int code = core_ok && kernel.projection_ok ? kExitOk : kExitAlgorithm;
    json equivalence{{"checked", false}};
    double verify_ms = 0;
    if (verify) {
      if (std::max(g.num_vertices(), kernel.H.num_vertices()) > verify_max_n) {
        spdlog::warn("kernelize: n={} / |V(H)|={} above --verify-max-n={}, equivalence check skipped",
                     g.num_vertices(), kernel.H.num_vertices(), verify_max_n);
        equivalence["skipped"] = "above --verify-max-n";
      } else {
        Stopwatch vw;
        bool in_g = exact_drds(g, cfg.r, cfg.k).has_value();
        bool in_h = exact_drds(kernel.H, cfg.r, kernel.k_new).has_value();
        verify_ms = vw.ms();
        equivalence = json{{"checked", true}, {"g_has_solution", in_g}, {"h_has_solution", in_h}, {"equal", in_g == in_h}};
        if (in_g != in_h) {
          spdlog::error("kernelize: answers differ between G and H");
          code = kExitAlgorithm;
        }
      }
    }
    result["equivalence"] = equivalence;
    json out{{"command", "kernelize"},
             {"args", config_json(graph, cfg)},
             {"input", input_summary(g)},
             {"result", result},
             {"verified", core_ok && kernel.projection_ok},
             {"timings_ms",
              {{"core", core_ms}, {"reduce", reduce_ms}, {"build", build_ms}, {"verify", verify_ms}, {"total", total.ms()}}}};
    emit(out, report);
    return code;
  }
};

// ---- solve ------------------------------------------------------------------

struct SolveCmd {
  std::string problem;
  std::string graph;
  std::size_t k = 1;
  std::uint32_t r = 1;
  std::string terminals;
  std::optional<std::size_t> K_threshold;
  UqwFlags uqw;
  std::string report;

  int run(const GlobalOptions&) const {
    Graph g = load_graph(graph);
    json out{{"command", "solve"}, {"args", {{"problem", problem}, {"graph", graph}}}, {"input", input_summary(g)}};
    json result;
    bool found = false;
    bool verified = false;
    Stopwatch sw;
    if (problem == "drds") {
      out["args"]["r"] = r;
      out["args"]["k"] = k;
      auto sol = exact_drds(g, r, k);
      found = sol.has_value();
      if (found) {
        verified = sol->size() <= k && is_r_dominating(g, *sol, r);
        result = json{{"solution", *sol}, {"size", sol->size()}};
      }
    } else if (problem == "cds" || problem == "cds-fpt") {
      out["args"]["k"] = k;
      std::optional<std::vector<Vertex>> sol;
      if (problem == "cds") {
        sol = brute_cds(g, k);
      } else {
        CdsStats stats;
        CdsOptions opts;
        opts.K_threshold = K_threshold;
        opts.stats = &stats;
        sol = cds_fpt(g, k, uqw.config(), opts);
        result["stats"] = json{{"nodes", stats.nodes},
                               {"uqw_branchings", stats.uqw_branchings},
                               {"fallback_branchings", stats.fallback_branchings},
                               {"uqw_failures", stats.uqw_failures},
                               {"leaves", stats.leaves},
                               {"partitions", stats.partitions},
                               {"exchanges", stats.exchanges}};
      }
      found = sol.has_value();
      if (found) {
        verified = sol->size() <= k && is_connected_dominating(g, *sol);
        result["solution"] = *sol;
        result["size"] = sol->size();
      }
    } else if (problem == "steiner") {
      auto T = parse_inline_ids(terminals);
      out["args"]["terminals"] = T;
      try {
        SteinerTree tree = dreyfus_wagner(g, T);
        found = true;
        verified = tree.edges.size() == tree.cost && tree.vertices.size() == tree.cost + 1 &&
                   std::includes(tree.vertices.begin(), tree.vertices.end(), T.begin(), T.end());
        json edges = json::array();
        for (auto [u, v] : tree.edges) edges.push_back(json::array({u, v}));
        result = json{{"solution", tree.vertices}, {"cost", tree.cost}, {"edges", edges}};
      } catch (const InfeasibleError& e) {
        spdlog::info("steiner: {}", e.what());
      }
    } else {
      throw InputError("unknown problem '" + problem + "'");
    }
    double solve_ms = sw.ms();
    if (!found) result["solution"] = "NONE";
    out["result"] = result;
    out["verified"] = found ? json(verified) : json(nullptr);
    out["timings_ms"] = json{{"solve", solve_ms}};
    emit(out, report);
    if (!found) return kExitNo;
    return verified ? kExitOk : kExitAlgorithm;
  }
};

// ---- bench ------------------------------------------------------------------

struct BenchRow {
  std::string family;
  std::size_t n = 0;
  std::uint32_t r = 0;
  std::uint32_t k = 0;
  std::size_t z = 0;
  std::size_t y = 0;
  std::size_t h = 0;
  double core_ms = 0;
  double reduce_ms = 0;
  double build_ms = 0;
  bool projection_ok = false;
  std::string error;
};

constexpr const char* kBenchHeader = "family,n,r,k,z_size,y_size,h_size,core_ms,reduce_ms,build_ms,projection_ok";

std::vector<std::uint32_t> parse_k_range(const std::string& text) {
  std::vector<std::uint32_t> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    auto lo = parse_id_list_text(text.substr(0, dots));
    auto hi = parse_id_list_text(text.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) throw InputError("bad k range '" + text + "'");
    for (std::uint32_t k = lo[0]; k <= hi[0]; ++k) out.push_back(k);
  } else {
    for (Vertex k : parse_id_list_text(text)) out.push_back(k);
  }
  if (out.empty()) throw InputError("empty k range");
  return out;
}

struct BenchCmd {
  std::string family = "grid";
  std::string sizes = "8,12,16";
  std::uint32_t r = 1;
  std::string k_range = "2..6";
  std::size_t degree = 2;
  std::string out_csv;
  std::optional<std::size_t> ell;
  bool single = false;
  std::string report;

  Graph make_graph(std::size_t size, std::uint64_t seed) const {
    if (family == "grid") return grid_graph(size, size);
    if (family == "path") return path_graph(size);
    if (family == "cycle") return cycle_graph(size);
    if (family == "stars") return stars_graph(size, degree);
    if (family == "random_degenerate") return random_degenerate_graph(size, degree, seed);
    if (family == "random_bounded_degree") return random_bounded_degree_graph(size, degree, seed);
    throw InputError("bench: unsupported family '" + family + "'");
  }

  BenchRow cell(std::size_t size, std::uint32_t k, std::uint64_t seed) const {
    BenchRow row;
    row.family = family;
    row.r = r;
    row.k = k;
    Graph g = make_graph(size, seed);
    row.n = g.num_vertices();
    CoreConfig cfg;
    cfg.r = r;
    cfg.k = k;
    cfg.ell = ell;
    cfg.batch = !single;
    try {
      Stopwatch sw;
      auto core = domination_core(g, cfg);
      row.core_ms = sw.ms();
      sw = Stopwatch();
      auto reps = reduce_dominators(g, core.Z, r);
      row.reduce_ms = sw.ms();
      sw = Stopwatch();
      auto kernel = build_kernel(g, core.Z, reps, r, k);
      row.build_ms = sw.ms();
      row.z = core.Z.size();
      row.y = reps.Y.size();
      row.h = kernel.H.num_vertices();
      row.projection_ok = kernel.projection_ok;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  }

  int run(const GlobalOptions& global) const {
    if (out_csv.empty()) throw InputError("bench: --out is required");
    auto size_list = parse_id_list_text(sizes);
    if (size_list.empty()) throw InputError("bench: empty size list");
    auto ks = parse_k_range(k_range);
    if (r < 1) throw InputError("bench: r must be >= 1");
    std::uint64_t seed = global.seed.value_or(1);
    make_graph(size_list.front(), seed);  // reject bad families before starting workers

    std::vector<std::pair<std::size_t, std::uint32_t>> cells;
    for (Vertex s : size_list) {
      for (std::uint32_t k : ks) cells.emplace_back(s, k);
    }
    std::vector<BenchRow> rows(cells.size());
    unsigned workers = global.deterministic ? 1 : std::max(1u, global.threads);
    Stopwatch total;
    if (workers == 1) {
      for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = cell(cells[i].first, cells[i].second, seed);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = cell(cells[i].first, cells[i].second, seed);
        });
      }
      for (auto& th : pool) th.join();
    }

    std::ofstream csv(out_csv, std::ios::trunc);
    if (!csv) throw InputError("cannot write '" + out_csv + "'");
    csv << kBenchHeader << '\n';
    std::size_t failed = 0;
    for (const auto& row : rows) {
      if (!row.error.empty()) {
        ++failed;
        spdlog::error("bench: {} n={} k={}: {}", row.family, row.n, row.k, row.error);
      }
      csv << row.family << ',' << row.n << ',' << row.r << ',' << row.k << ',' << row.z << ',' << row.y << ','
          << row.h << ',' << fmt::format("{:.3f},{:.3f},{:.3f}", row.core_ms, row.reduce_ms, row.build_ms) << ','
          << (row.projection_ok ? "true" : "false") << '\n';
    }
    json out{{"command", "bench"},
             {"args", {{"family", family}, {"sizes", size_list}, {"r", r}, {"k", ks}, {"seed", seed}, {"out", out_csv}}},
             {"result", {{"rows", rows.size()}, {"failed", failed}}},
             {"verified", failed == 0},
             {"timings_ms", {{"total", total.ms()}}}};
    emit(out, report);
    return failed == 0 ? kExitOk : kExitAlgorithm;
  }
};

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"quasiwide: uniform quasi-wideness, kernels and connected domination on sparse graphs"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for random graph families");
  app.add_option("--threads", global.threads, "Worker threads for bench")->capture_default_str();
  app.add_flag("--deterministic", global.deterministic, "Single-threaded, id-ordered execution");

  std::function<int()> action;

  GenCmd gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen_cmd->add_option("--spec", gen.spec, "Family spec, e.g. grid(12,12) or random_degenerate(200,2,7)")->required();
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");
  gen_cmd->callback([&] { action = [&] { return gen.run(global); }; });

  UqwCmd uqw;
  auto* uqw_cmd = app.add_subcommand("uqw", "Split a vertex set into a deletion set S and an r-independent B");
  uqw_cmd->add_option("--graph", uqw.graph, "Edge-list file")->required();
  uqw_cmd->add_option("--A", uqw.A, "'all' or a file of vertex ids")->capture_default_str();
  uqw_cmd->add_option("--r", uqw.r, "Independence radius")->required();
  uqw_cmd->add_option("--m", uqw.m, "Requested size of B")->required();
  uqw_cmd->add_option("--report", uqw.report, "Also write the JSON report here");
  uqw.flags.add(uqw_cmd);
  uqw_cmd->callback([&] { action = [&] { return uqw.run(global); }; });

  IndiscernibleCmd ind;
  auto* ind_cmd = app.add_subcommand("indiscernible", "Extract an indiscernible subsequence");
  ind_cmd->add_option("--graph", ind.graph, "Edge-list file")->required();
  ind_cmd->add_option("--seq", ind.seq, "'all' or a file of vertex ids")->capture_default_str();
  ind_cmd->add_option("--k", ind.k, "Use the formula family of arity k")->capture_default_str();
  ind_cmd->add_flag("--edge-only", ind.edge_only, "Use only the edge formula");
  ind_cmd->add_option("--m", ind.m, "Requested length")->required();
  ind_cmd->add_option("--verify-max-len", ind.verify_max_len, "Brute-force check up to this length")
      ->capture_default_str();
  ind_cmd->add_option("--report", ind.report, "Also write the JSON report here");
  ind_cmd->callback([&] { action = [&] { return ind.run(global); }; });

  LadderCmd ladder;
  auto* ladder_cmd = app.add_subcommand("ladder", "Brute-force ladder index");
  ladder_cmd->add_option("--graph", ladder.graph, "Edge-list file")->required();
  ladder_cmd->add_option("--max-k", ladder.max_k, "Stop searching at this length")->capture_default_str();
  ladder_cmd->add_option("--report", ladder.report, "Also write the JSON report here");
  ladder_cmd->callback([&] { action = [&] { return ladder.run(global); }; });

  CoreCmd core;
  auto* core_cmd = app.add_subcommand("core", "Compute an r-domination core");
  core_cmd->add_option("--graph", core.graph, "Edge-list file")->required();
  core.flags.add(core_cmd);
  core_cmd->add_option("--report", core.report, "Also write the JSON report here");
  core_cmd->callback([&] { action = [&] { return core.run(global); }; });

  KernelizeCmd kern;
  auto* kern_cmd = app.add_subcommand("kernelize", "Kernel for distance-r dominating set");
  kern_cmd->add_option("--graph", kern.graph, "Edge-list file")->required();
  kern.flags.add(kern_cmd);
  kern_cmd->add_option("--output", kern.output, "Write the kernel edge list here");
  kern_cmd->add_flag("--verify", kern.verify, "Compare exact answers on G and H");
  kern_cmd->add_option("--verify-max-n", kern.verify_max_n, "Skip --verify above this many vertices")
      ->capture_default_str();
  kern_cmd->add_option("--report", kern.report, "Also write the JSON report here");
  kern_cmd->callback([&] { action = [&] { return kern.run(global); }; });

  SolveCmd solve;
  auto* solve_cmd = app.add_subcommand("solve", "Exact and FPT solvers");
  solve_cmd->add_option("--problem", solve.problem, "drds, cds, cds-fpt or steiner")
      ->required()
      ->check(CLI::IsMember({"drds", "cds", "cds-fpt", "steiner"}));
  solve_cmd->add_option("--graph", solve.graph, "Edge-list file")->required();
  solve_cmd->add_option("--k", solve.k, "Solution size")->capture_default_str();
  solve_cmd->add_option("--r", solve.r, "Domination radius (drds)")->capture_default_str();
  solve_cmd->add_option("--terminals", solve.terminals, "Comma-separated terminals (steiner)");
  solve_cmd->add_option("--K-threshold", solve.K_threshold, "Leaf threshold for cds-fpt (default 4(k+1)^2)");
  solve.uqw.add(solve_cmd);
  solve_cmd->add_option("--report", solve.report, "Also write the JSON report here");
  solve_cmd->callback([&] { action = [&] { return solve.run(global); }; });

  BenchCmd bench;
  auto* bench_cmd = app.add_subcommand("bench", "Kernel-size sweep written as CSV");
  bench_cmd->add_option("--family", bench.family, "grid, path, cycle, stars, random_degenerate, random_bounded_degree")
      ->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes (grid side, or n)")->capture_default_str();
  bench_cmd->add_option("--r", bench.r, "Domination radius")->capture_default_str();
  bench_cmd->add_option("--k", bench.k_range, "k values: 'a..b' or a comma list")->capture_default_str();
  bench_cmd->add_option("--degree", bench.degree, "c or d for random families, leaves for stars")->capture_default_str();
  bench_cmd->add_option("--ell", bench.ell, "Core-size threshold");
  bench_cmd->add_flag("--single", bench.single, "Remove one dominatee per step");
  bench_cmd->add_option("--out", bench.out_csv, "CSV file (overwritten)")->required();
  bench_cmd->add_option("--report", bench.report, "Also write the JSON report here");
  bench_cmd->callback([&] { action = [&] { return bench.run(global); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }
  if (global.deterministic) global.threads = 1;

  try {
    return action();
  } catch (const UqwFailureError& e) {
    json out{{"error", e.what()}, {"failure", failure_json(e.failure())}};
    std::cout << out.dump(2) << '\n';
    spdlog::error("{}", e.what());
    return kExitAlgorithm;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitAlgorithm;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
