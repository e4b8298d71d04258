#include "evfuse/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "evfuse/error.hpp"
#include "text.hpp"

namespace evfuse {

namespace {

constexpr double kRowSumTolerance = 1e-9;

std::string line_prefix(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

std::size_t label_index(const std::vector<std::string>& labels, std::string_view label) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw ValidationError("unknown type label '" + std::string(label) + "'");
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  auto v = detail::to_integer<std::size_t>(value);
  if (!v || *v == 0) throw ValidationError(std::string(key) + " must be a positive integer, got '" + std::string(value) + "'");
  return *v;
}

void check_row(const Eigen::MatrixXd& m, Eigen::Index row, const std::string& where) {
  const double sum = m.row(row).sum();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (!(m(row, j) >= 0.0 && m(row, j) <= 1.0)) throw ValidationError(where + "probability outside [0, 1]");
  if (std::abs(sum - 1.0) > kRowSumTolerance)
    throw ValidationError(where + "row sums to " + detail::format_g(sum, 12) + ", expected 1");
}

Eigen::MatrixXd parse_inline_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  for (std::string_view row : detail::split(text, ';')) {
    std::vector<double> values;
    for (std::string_view cell : detail::split_ws(row)) {
      auto v = detail::to_double(cell);
      if (!v) throw ValidationError("malformed matrix entry '" + std::string(cell) + "'");
      values.push_back(*v);
    }
    rows.push_back(std::move(values));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw ValidationError("matrix row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[static_cast<std::size_t>(i)].size()) + " entries, expected " +
                            std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    check_row(m, i, "matrix row " + std::to_string(i + 1) + ": ");
  }
  return m;
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base_dir.empty()) return base_dir / p;
  return p;
}

}  // namespace

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.labels == b.labels && a.classifier == b.classifier && a.matrix.rows() == b.matrix.rows() &&
         a.matrix.cols() == b.matrix.cols() && a.matrix == b.matrix && a.segments == b.segments &&
         a.rules == b.rules && a.runs == b.runs && a.seed == b.seed && a.criterion == b.criterion &&
         a.out_dir == b.out_dir && a.threads == b.threads;
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  const Scenario scenario = default_scenario();
  cfg.labels = scenario.frame().labels();
  cfg.matrix = builtin_classifier("c1", scenario.frame()).matrix();
  cfg.segments = scenario.segments();
  return cfg;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MatrixFile parse_matrix_file(std::string_view text) {
  MatrixFile out;
  std::vector<std::pair<std::size_t, std::vector<double>>> rows;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto cells = detail::split_ws(line);
    if (out.labels.empty()) {
      for (auto c : cells) out.labels.emplace_back(c);
      continue;
    }
    std::vector<double> values;
    for (auto c : cells) {
      auto v = detail::to_double(c);
      if (!v) throw ValidationError(line_prefix(line_no) + "malformed probability '" + std::string(c) + "'");
      values.push_back(*v);
    }
    if (values.size() != out.labels.size())
      throw ValidationError(line_prefix(line_no) + "expected " + std::to_string(out.labels.size()) + " entries, got " +
                            std::to_string(values.size()));
    rows.emplace_back(line_no, std::move(values));
  }
  if (out.labels.empty()) throw ValidationError("confusion matrix file has no label line");
  static_cast<void>(Frame(out.labels));
  const auto n = static_cast<Eigen::Index>(out.labels.size());
  if (static_cast<Eigen::Index>(rows.size()) != n)
    throw ValidationError("confusion matrix file has " + std::to_string(rows.size()) + " rows, expected " +
                          std::to_string(n));
  out.matrix.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [ln, values] = rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) out.matrix(i, j) = values[static_cast<std::size_t>(j)];
    check_row(out.matrix, i, line_prefix(ln));
  }
  return out;
}

std::vector<Segment> parse_scenario_text(std::string_view text, const std::vector<std::string>& labels) {
  std::vector<Segment> segments;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto cells = detail::split_ws(line);
    if (cells.size() != 2) throw ValidationError(line_prefix(line_no) + "expected 'label duration'");
    try {
      segments.push_back({label_index(labels, cells[0]), parse_count("duration", cells[1])});
    } catch (const ValidationError& e) {
      throw ValidationError(line_prefix(line_no) + e.what());
    }
  }
  if (segments.empty()) throw ValidationError("scenario file has no segments");
  return segments;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir) {
  value = detail::trim(value);
  if (key == "labels") {
    std::vector<std::string> labels;
    for (auto piece : detail::split(value, ',')) labels.emplace_back(detail::trim(piece));
    static_cast<void>(Frame(labels));
    cfg.labels = std::move(labels);
  } else if (key == "classifier") {
    if (value == "c1" || value == "c2") {
      if (cfg.labels.size() != 2) throw ValidationError("builtin classifier " + std::string(value) + " needs two labels");
      cfg.classifier = std::string(value);
      cfg.matrix = builtin_classifier(value, Frame(cfg.labels)).matrix();
    } else {
      const auto path = resolve(base_dir, value);
      MatrixFile file;
      try {
        file = parse_matrix_file(read_file(path));
      } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
      }
      cfg.labels = std::move(file.labels);
      cfg.matrix = std::move(file.matrix);
      cfg.classifier = "custom";
    }
  } else if (key == "matrix") {
    cfg.matrix = parse_inline_matrix(value);
    cfg.classifier = "custom";
  } else if (key == "scenario") {
    const auto path = resolve(base_dir, value);
    try {
      cfg.segments = parse_scenario_text(read_file(path), cfg.labels);
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
  } else if (key == "segments") {
    std::vector<Segment> segments;
    for (auto piece : detail::split(value, ',')) {
      auto parts = detail::split(detail::trim(piece), ':');
      if (parts.size() != 2) throw ValidationError("segment '" + std::string(piece) + "' is not 'label:duration'");
      segments.push_back({label_index(cfg.labels, detail::trim(parts[0])), parse_count("duration", parts[1])});
    }
    cfg.segments = std::move(segments);
  } else if (key == "runs") {
    cfg.runs = parse_count(key, value);
  } else if (key == "seed") {
    auto v = detail::to_integer<std::uint64_t>(value);
    if (!v) throw ValidationError("seed must be a non-negative integer, got '" + std::string(value) + "'");
    cfg.seed = *v;
  } else if (key == "threads") {
    cfg.threads = parse_count(key, value);
  } else if (key == "rule") {
    if (value == "both")
      cfg.rules = {FusionRule::Dempster, FusionRule::Pcr5};
    else
      cfg.rules = {parse_rule(value)};
  } else if (key == "criterion") {
    cfg.criterion = parse_criterion(value);
  } else if (key == "out") {
    if (value.empty()) throw ValidationError("out must not be empty");
    cfg.out_dir = std::string(value);
  } else {
    throw ValidationError("unknown key '" + std::string(key) + "'");
  }
}

ExperimentConfig apply_config_text(ExperimentConfig base, std::string_view text, const std::filesystem::path& base_dir) {
  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ValidationError(line_prefix(line_no) + "expected 'key = value'");
    try {
      apply_setting(base, detail::trim(line.substr(0, eq)), line.substr(eq + 1), base_dir);
    } catch (const ValidationError& e) {
      throw ValidationError(line_prefix(line_no) + e.what());
    }
  }
  return base;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::string out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  std::string labels;
  for (const auto& l : cfg.labels) labels += (labels.empty() ? "" : ",") + l;
  put("labels", labels);
  if (cfg.classifier == "c1" || cfg.classifier == "c2") {
    put("classifier", cfg.classifier);
  } else {
    std::string m;
    for (Eigen::Index i = 0; i < cfg.matrix.rows(); ++i) {
      if (i > 0) m += "; ";
      for (Eigen::Index j = 0; j < cfg.matrix.cols(); ++j) {
        if (j > 0) m += ' ';
        m += detail::format_g(cfg.matrix(i, j), 17);
      }
    }
    put("matrix", m);
  }
  std::string segs;
  for (const auto& s : cfg.segments)
    segs += (segs.empty() ? "" : ",") + cfg.labels.at(s.type) + ":" + std::to_string(s.duration);
  put("segments", segs);
  put("rule", cfg.rules.size() > 1 ? "both" : std::string(to_string(cfg.rules.at(0))));
  put("runs", std::to_string(cfg.runs));
  put("seed", std::to_string(cfg.seed));
  put("criterion", std::string(to_string(cfg.criterion)));
  put("out", cfg.out_dir);
  put("threads", std::to_string(cfg.threads));
  return out;
}

void validate(const ExperimentConfig& cfg) {
  const Frame frame(cfg.labels);
  if ((cfg.classifier == "c1" || cfg.classifier == "c2") && frame.size() != 2)
    throw ValidationError("builtin classifier " + cfg.classifier + " needs a two-type frame");
  static_cast<void>(ConfusionMatrix(frame, cfg.matrix));
  static_cast<void>(build_scenario(frame, cfg.segments));
  if (cfg.rules.empty()) throw ValidationError("no fusion rule selected");
  if (cfg.runs == 0) throw ValidationError("runs must be positive");
  if (cfg.threads == 0) throw ValidationError("threads must be positive");
}

}  // namespace evfuse
