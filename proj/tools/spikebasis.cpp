#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "spikebasis/analytic.hpp"
#include "spikebasis/bases.hpp"
#include "spikebasis/bestbasis.hpp"
#include "spikebasis/costs.hpp"
#include "spikebasis/io.hpp"
#include "spikebasis/processes.hpp"
#include "spikebasis/verify.hpp"

using namespace spikebasis;
using nlohmann::json;

namespace {

struct Global {
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "json";
};

// Writes the buffered output in one go so a failed run leaves no partial file.
void emit(const Global& g, const std::string& text) {
  if (g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + g.out + "' for writing");
  file << text;
  if (!file.flush()) throw std::runtime_error("write to '" + g.out + "' failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CostSpec parse_cost(const std::string& name, double p, bool exact_dataset) {
  if (name == "lp") return CostSpec::lp(p);
  if (name == "l0") return CostSpec::l0();
  if (name == "entropy") return exact_dataset ? CostSpec::entropy_exact() : CostSpec::entropy_empirical();
  if (name == "entropy_exact") return CostSpec::entropy_exact();
  if (name == "entropy_empirical") return CostSpec::entropy_empirical();
  throw std::invalid_argument("unknown cost '" + name + "'");
}

std::string selection_text(const TreeBasis& sel) {
  std::string s;
  for (const Node& nd : sel.nodes()) {
    if (!s.empty()) s += ';';
    s += std::to_string(nd.level) + ":" + std::to_string(nd.index);
  }
  return s;
}

std::string results_csv(const std::vector<BestBasisResult>& results) {
  std::ostringstream out;
  out << "sample,n0,K,cost_kind,total_cost,selection\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << i << ',' << r.n0 << ',' << r.max_level << ',' << to_string(r.per_node_costs.kind) << ','
        << io::format_number(r.total_cost) << ',' << selection_text(r.selection) << '\n';
  }
  return out.str();
}

json cost_summary(const Basis& basis, int n) {
  const SpikeProcess spike(n);
  const double h = entropy_exact_discrete(spike, basis).value;
  return {{"entropy_bits", io::round_sig(h)},
          {"mutual_information_bits", io::round_sig(h - std::log2(static_cast<double>(n)))},
          {"l0", io::round_sig(l0_cost(spike, basis).value)},
          {"l1", io::round_sig(lp_cost(spike, basis, 1.0).value)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparsity versus statistical independence on the spike process"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "RNG seed (env SPIKEBASIS_SEED)")->envname("SPIKEBASIS_SEED")->capture_default_str();
  app.add_option("--out", g.out, "Output path, '-' for stdout")->capture_default_str();
  auto* format_opt = app.add_option("--format", g.format, "Output format")
                         ->check(CLI::IsMember({"json", "csv"}))
                         ->capture_default_str();

  // sample
  auto* sample = app.add_subcommand("sample", "Draw a dataset from a process");
  std::string process = "spike";
  int n = 8, count = 10, spikes = 2;
  sample->add_option("--process", process, "spike | multispike | uniform2d")
      ->check(CLI::IsMember({"spike", "multispike", "uniform2d"}))
      ->capture_default_str();
  sample->add_option("--n", n, "Dimension (spike processes)")->capture_default_str();
  sample->add_option("--count", count, "Number of realizations")->capture_default_str();
  sample->add_option("--m", spikes, "Spikes per realization (multispike)")->capture_default_str();

  // bestbasis
  auto* bb = app.add_subcommand("bestbasis", "Best-basis search in the Haar-Walsh dictionary");
  std::string bb_process, input, cost = "entropy";
  bool exact = false, per_realization = false;
  int n0 = 3, depth = -1;
  double p = 1.0;
  bb->add_option("--process", bb_process, "Use a process model instead of data (spike)")
      ->check(CLI::IsMember({"spike"}));
  bb->add_flag("--exact", exact, "Exact node costs of the process");
  bb->add_option("--n0", n0, "log2 of the dimension (with --process)")->capture_default_str();
  bb->add_option("--input", input, "Dataset CSV, one sample per row");
  bb->add_option("--cost", cost, "lp | l0 | entropy | entropy_exact | entropy_empirical")->capture_default_str();
  bb->add_option("--p", p, "Exponent for lp")->capture_default_str();
  bb->add_option("--K", depth, "Tree depth (default: full)");
  bb->add_flag("--per-realization", per_realization, "One selection per sample");

  // lsdb
  auto* lsdb = app.add_subcommand("lsdb", "Closed-form least dependent bases");
  std::string group = "og";
  int lsdb_n = 5;
  double a = 1.0, b = 1.0, c = 2.0;
  lsdb->add_option("--group", group, "og | gl")->check(CLI::IsMember({"og", "gl"}))->capture_default_str();
  lsdb->add_option("--n", lsdb_n, "Dimension")->capture_default_str();
  lsdb->add_option("--a", a, "GL pair: first-row value")->capture_default_str();
  lsdb->add_option("--b", b, "GL pair: off-diagonal value")->capture_default_str();
  lsdb->add_option("--c", c, "GL pair: diagonal value")->capture_default_str();

  // curves
  auto* curves = app.add_subcommand("curves", "Tabulate a closed-form function (CSV unless --format json)");
  std::string function = "f";
  double curve_p = 0.5;
  curves->add_option("--function", function, "f | g | gg2 | h | r | s_p")
      ->check(CLI::IsMember({"f", "g", "gg2", "h", "r", "s_p"}))
      ->capture_default_str();
  curves->add_option("--p", curve_p, "Exponent for s_p")->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "Check claims; exit status 1 on any violation");
  std::string claim = "all";
  ver->add_option("--claim", claim, "thm1 | thm2 | thm3 | prop1 | prop2 | prop3 | cor1 | counterexample | all")
      ->check(CLI::IsMember(verify::claim_names()))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      Dataset data = process == "spike"        ? sample_spike(SpikeProcess(n), count, g.seed)
                     : process == "multispike" ? sample_multispike(n, spikes, count, g.seed)
                                               : sample_uniform2d(count, g.seed);
      if (g.format == "csv") {
        std::ostringstream out;
        io::write_dataset_csv(out, data);
        emit(g, out.str());
      } else {
        json j = io::to_json(data);
        j["process"] = process;
        j["seed"] = g.seed;
        emit(g, dump(j));
      }
      return 0;
    }

    if (*bb) {
      std::vector<BestBasisResult> results;
      if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot read '" + input + "'");
        const Dataset data = io::read_dataset_csv(in);
        const int dataset_n0 = dyadic_exponent(data.dimension());
        if (dataset_n0 < 0) throw std::invalid_argument("sample length must be a power of two");
        const int k = depth < 0 ? dataset_n0 : depth;
        const CostSpec spec = parse_cost(cost, p, cost != "entropy");
        if (per_realization)
          results = best_basis_per_realization(data, k, spec);
        else
          results.push_back(best_basis(data, k, spec));
      } else if (bb_process == "spike" && exact) {
        results.push_back(best_basis_exact_spike(n0, parse_cost(cost, p, true)));
      } else {
        throw std::invalid_argument("bestbasis needs --input or --process spike --exact");
      }
      if (g.format == "csv") {
        emit(g, results_csv(results));
      } else if (results.size() == 1 && !per_realization) {
        emit(g, dump(io::to_json(results.front())));
      } else {
        json arr = json::array();
        for (const auto& r : results) arr.push_back(io::to_json(r));
        emit(g, dump(arr));
      }
      return 0;
    }

    if (*lsdb) {
      json bases = json::array();
      if (group == "og") {
        for (const Basis& basis : lsdb_orthonormal(lsdb_n)) {
          json j = io::to_json(basis);
          j["cost"] = cost_summary(basis, lsdb_n);
          bases.push_back(std::move(j));
        }
      } else {
        const Basis pair = lsdb_gl_pair(GlLsdbParams::uniform(lsdb_n, a, b, c));
        json j = io::to_json(pair);
        j["analysis"] = io::matrix_json(pair.analysis());
        j["synthesis"] = io::matrix_json(pair.synthesis());
        j["cost"] = cost_summary(pair, lsdb_n);
        bases.push_back(std::move(j));
      }
      if (g.format == "csv") {
        std::ostringstream out;
        out << "constructor,group_tag,entropy_bits,mutual_information_bits,l0,l1\n";
        for (const auto& j : bases)
          out << j["provenance"]["constructor"].get<std::string>() << ',' << j["group_tag"].get<std::string>() << ','
              << io::format_number(j["cost"]["entropy_bits"]) << ','
              << io::format_number(j["cost"]["mutual_information_bits"]) << ','
              << io::format_number(j["cost"]["l0"]) << ',' << io::format_number(j["cost"]["l1"]) << '\n';
        emit(g, out.str());
      } else {
        emit(g, dump({{"group", group}, {"n", lsdb_n}, {"bases", bases}}));
      }
      return 0;
    }

    if (*curves) {
      const auto points = analytic::curve(function, curve_p);
      if (format_opt->count() > 0 && g.format == "json") {
        json pts = json::array();
        for (const auto& pt : points) pts.push_back({io::round_sig(pt.x), io::round_sig(pt.value)});
        emit(g, dump({{"function", function}, {"step", analytic::kCurveStep}, {"points", pts}}));
      } else {
        std::ostringstream out;
        io::write_curve_csv(out, function, points);
        emit(g, out.str());
      }
      return 0;
    }

    if (*ver) {
      const auto reports = verify::run_claim(claim, g.seed);
      std::ostringstream out;
      if (g.format == "csv")
        verify::write_summary_csv(out, reports);
      else
        verify::write_jsonl(out, reports);
      emit(g, out.str());
      bool violated = false;
      for (const auto& r : reports) {
        std::cerr << r.claim_id << ": " << verify::to_string(r.status) << '\n';
        violated = violated || r.status != verify::Status::confirmed;
      }
      return violated ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
