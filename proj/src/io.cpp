#include "spikebasis/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spikebasis::io {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // avoids "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(round_sig(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Basis& basis) {
  return {{"n", basis.dimension()},
          {"group_tag", std::string(to_string(basis.tag()))},
          {"matrix", matrix_json(basis.synthesis())},
          {"provenance", {{"constructor", basis.provenance().constructor},
                          {"params", basis.provenance().params}}}};
}

json to_json(const Dataset& data) {
  return {{"n", data.dimension()}, {"N", data.count()}, {"samples", matrix_json(data.samples.transpose())}};
}

json to_json(const DictionaryTable& table) {
  json levels = json::array();
  for (int k = 0; k <= table.max_level(); ++k) {
    json nodes = json::array();
    for (int l = 0; l < (1 << k); ++l) {
      json node = json::array();
      for (double v : table.node(k, l)) node.push_back(round_sig(v));
      nodes.push_back(std::move(node));
    }
    levels.push_back(std::move(nodes));
  }
  return {{"n0", table.n0()}, {"K", table.max_level()}, {"levels", std::move(levels)}};
}

json to_json(const TreeBasis& selection) {
  json out = json::array();
  for (const Node& nd : selection.nodes()) out.push_back({nd.level, nd.index});
  return out;
}

json to_json(const BestBasisResult& result) {
  return {{"selection", to_json(result.selection)},
          {"total_cost", round_sig(result.total_cost)},
          {"cost_kind", std::string(to_string(result.per_node_costs.kind))},
          {"n0", result.n0},
          {"K", result.max_level}};
}

json covariance_json(int n) { return {{"n", n}, {"matrix", matrix_json(spike_covariance(n))}}; }

json cost_report(const CostValue& cost, const Provenance& basis_provenance, Index n, Index samples,
                 const json& estimator_params) {
  return {{"basis_provenance", {{"constructor", basis_provenance.constructor},
                                {"params", basis_provenance.params}}},
          {"cost_kind", std::string(to_string(cost.kind))},
          {"value_bits_or_raw", round_sig(cost.value)},
          {"n", n},
          {"N", samples},
          {"estimator_params", estimator_params}};
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  for (Index k = 0; k < data.count(); ++k) {
    for (Index i = 0; i < data.dimension(); ++i) {
      if (i) out << ',';
      out << format_number(data.samples(i, k));
    }
    out << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw std::runtime_error("read_dataset_csv: bad number on line " + std::to_string(line_no));
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("read_dataset_csv: ragged row on line " + std::to_string(line_no));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("read_dataset_csv: no samples");
  Dataset data{Eigen::MatrixXd(static_cast<Index>(rows.front().size()), static_cast<Index>(rows.size()))};
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t i = 0; i < rows[k].size(); ++i)
      data.samples(static_cast<Index>(i), static_cast<Index>(k)) = rows[k][i];
  return data;
}

void write_curve_csv(std::ostream& out, std::string_view function,
                     const std::vector<analytic::CurvePoint>& points) {
  out << "# " << function << " step=" << format_number(analytic::kCurveStep) << '\n';
  out << "x,value\n";
  for (const auto& pt : points) out << format_number(pt.x) << ',' << format_number(pt.value) << '\n';
}

}  // namespace spikebasis::io
