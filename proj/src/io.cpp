#include "lrtbench/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lrtbench/digest.hpp"
#include "lrtbench/error.hpp"
#include "lrtbench/svg.hpp"
#include "lrtbench/text.hpp"

namespace lrtbench {

namespace fs = std::filesystem;

namespace {

std::string join_path(const std::string& directory, const std::string& name) {
  return (fs::path(directory) / name).string();
}

std::ofstream open_out(const std::string& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write " + file);
  return out;
}

void close_out(std::ofstream& out, const std::string& file) {
  out.close();
  require(!out.fail(), ErrorKind::io, "failed writing " + file);
}

std::vector<std::string> read_lines(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::missing_data, "cannot open " + file);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void expect_header(const std::vector<std::string>& lines, std::size_t at,
                   const std::string& header, const std::string& file) {
  require(lines.size() > at && lines[at] == header, ErrorKind::schema,
          file + ": expected header '" + header + "'");
}

std::vector<std::string> fields(const std::string& line, std::size_t expected,
                                const std::string& file, std::size_t line_no) {
  std::vector<std::string> out = split(line, ',');
  require(out.size() == expected, ErrorKind::schema,
          file + " line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
              " fields, got " + std::to_string(out.size()));
  return out;
}

std::size_t parse_index(const std::string& text) {
  const long long v = parse_int(text);
  require(v >= 0, ErrorKind::schema, "negative index '" + text + "'");
  return static_cast<std::size_t>(v);
}

int parse_label(const std::string& text) {
  const long long v = parse_int(text);
  require(v == 0 || v == 1, ErrorKind::schema, "label must be 0 or 1, got '" + text + "'");
  return static_cast<int>(v);
}

std::string long_header(std::size_t dim) {
  std::string h = "path_id,label,step_index,time";
  for (std::size_t c = 1; c <= dim; ++c) h += ",x_" + std::to_string(c);
  return h;
}

void write_long(const std::string& file, const std::vector<TimeSeriesPath>& paths,
                const std::vector<int>& labels) {
  std::ofstream out = open_out(file);
  out << long_header(paths.empty() ? 1 : paths.front().dim) << '\n';
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const TimeSeriesPath& path = paths[p];
    for (std::size_t k = 0; k < path.size(); ++k) {
      out << p << ',' << labels[p] << ',' << k << ',' << format_double(path.times[k]);
      for (double x : path.row(k)) out << ',' << format_double(x);
      out << '\n';
    }
  }
  close_out(out, file);
}

std::vector<TimeSeriesPath> read_long(const std::string& file, std::size_t dim,
                                      const std::vector<int>& labels, GridKind grid) {
  const auto lines = read_lines(file);
  expect_header(lines, 0, long_header(dim), file);
  std::vector<TimeSeriesPath> paths(labels.size());
  for (auto& p : paths) {
    p.dim = dim;
    p.grid = grid;
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = fields(lines[i], 4 + dim, file, i + 1);
    const std::size_t id = parse_index(f[0]);
    require(id < paths.size(), ErrorKind::schema,
            file + " line " + std::to_string(i + 1) + ": unknown path_id " + f[0]);
    require(parse_label(f[1]) == labels[id], ErrorKind::schema,
            file + " line " + std::to_string(i + 1) + ": label disagrees with labels.csv");
    TimeSeriesPath& path = paths[id];
    require(parse_index(f[2]) == path.size(), ErrorKind::schema,
            file + " line " + std::to_string(i + 1) + ": steps out of order");
    path.times.push_back(parse_double(f[3]));
    for (std::size_t c = 0; c < dim; ++c) path.states.push_back(parse_double(f[4 + c]));
  }
  return paths;
}

void write_text(const std::string& file, const std::string& text) {
  std::ofstream out = open_out(file);
  out << text;
  close_out(out, file);
}

std::string file_key(const std::string& name) { return "file." + name + ".sha256"; }

std::string safe_name(const std::string& classifier) {
  for (char c : classifier)
    require(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_',
            ErrorKind::invalid_argument,
            "classifier name '" + classifier + "' may only use letters, digits, '-' and '_'");
  return classifier;
}

const std::string& manifest_value(const Manifest& manifest, const std::string& key,
                                  const std::string& file) {
  auto it = manifest.find(key);
  require(it != manifest.end(), ErrorKind::schema, file + " lacks '" + key + "'");
  return it->second;
}

}  // namespace

void ensure_directory(const std::string& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  require(!ec && fs::is_directory(directory), ErrorKind::io,
          "cannot create directory " + directory + (ec ? ": " + ec.message() : ""));
}

void write_manifest(const std::string& file, const Manifest& manifest) {
  std::string text;
  for (const auto& [key, value] : manifest) {
    require(key.find_first_of("=\n") == std::string::npos && value.find('\n') == std::string::npos,
            ErrorKind::invalid_argument, "manifest entry '" + key + "' is not representable");
    text += key + "=" + value + "\n";
  }
  write_text(file, text);
}

Manifest read_manifest(const std::string& file) {
  Manifest manifest;
  const auto lines = read_lines(file);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto eq = lines[i].find('=');
    require(eq != std::string::npos && eq > 0, ErrorKind::schema,
            file + " line " + std::to_string(i + 1) + ": expected key=value");
    manifest[lines[i].substr(0, eq)] = lines[i].substr(eq + 1);
  }
  return manifest;
}

std::string_view to_string(ExportLayout layout) {
  return layout == ExportLayout::wide ? "wide" : "long";
}

ExportLayout parse_layout(std::string_view name) {
  if (name == "long") return ExportLayout::long_form;
  if (name == "wide") return ExportLayout::wide;
  fail(ErrorKind::invalid_argument, "unknown layout '" + std::string(name) + "'");
}

ExportBundle export_dataset(const Dataset& dataset, const std::string& directory,
                            ExportLayout layout) {
  require(dataset.size() > 0, ErrorKind::invalid_argument, "cannot export an empty dataset");
  ensure_directory(directory);
  ExportBundle bundle{directory, layout, {}};
  Manifest manifest = dataset.manifest;
  manifest["export.layout"] = std::string(to_string(layout));
  const std::size_t dim = dataset.paths.front().dim;

  auto record = [&](const std::string& name) {
    manifest[file_key(name)] = sha256_file(join_path(directory, name));
    bundle.files.push_back(name);
  };

  {
    const std::string name = "labels.csv";
    std::ofstream out = open_out(join_path(directory, name));
    out << "path_id,label\n";
    for (std::size_t p = 0; p < dataset.size(); ++p) out << p << ',' << dataset.labels[p] << '\n';
    close_out(out, join_path(directory, name));
    record(name);
  }

  if (layout == ExportLayout::long_form) {
    write_long(join_path(directory, "paths.csv"), dataset.paths, dataset.labels);
    record("paths.csv");
  } else {
    const TimeSeriesPath& first = dataset.paths.front();
    for (const auto& path : dataset.paths)
      require(path.times == first.times, ErrorKind::invalid_argument,
              "wide layout needs a common time grid");
    const std::string times_file = join_path(directory, "times.csv");
    std::ofstream times = open_out(times_file);
    times << "step_index,time\n";
    for (std::size_t k = 0; k < first.size(); ++k)
      times << k << ',' << format_double(first.times[k]) << '\n';
    close_out(times, times_file);
    record("times.csv");

    const std::string wide_file = join_path(directory, "paths_wide.csv");
    std::ofstream out = open_out(wide_file);
    out << "label";
    for (std::size_t k = 0; k < first.size(); ++k)
      for (std::size_t c = 1; c <= dim; ++c) out << ",x_" << k << '_' << c;
    out << '\n';
    for (std::size_t p = 0; p < dataset.size(); ++p) {
      out << dataset.labels[p];
      for (double x : dataset.paths[p].states) out << ',' << format_double(x);
      out << '\n';
    }
    close_out(out, wide_file);
    record("paths_wide.csv");
  }

  if (dataset.has_fine()) {
    write_long(join_path(directory, "fine_paths.csv"), dataset.fine_paths, dataset.labels);
    record("fine_paths.csv");
  }

  write_manifest(join_path(directory, "manifest.txt"), manifest);
  bundle.files.push_back("manifest.txt");
  return bundle;
}

Dataset import_dataset(const std::string& directory) {
  const std::string manifest_file = join_path(directory, "manifest.txt");
  require(fs::exists(manifest_file), ErrorKind::missing_data, "no manifest.txt in " + directory);
  const Manifest manifest = read_manifest(manifest_file);
  require(manifest_value(manifest, "schema_version", manifest_file) ==
              std::to_string(kSchemaVersion),
          ErrorKind::schema,
          "unsupported schema_version " + manifest.at("schema_version") + " in " + manifest_file);
  const ExportLayout layout = parse_layout(manifest_value(manifest, "export.layout", manifest_file));

  auto verified = [&](const std::string& name) {
    const std::string file = join_path(directory, name);
    require(fs::exists(file), ErrorKind::missing_data, "bundle lacks " + name);
    const std::string& expected = manifest_value(manifest, file_key(name), manifest_file);
    require(sha256_file(file) == expected, ErrorKind::digest_mismatch,
            name + " does not match its manifest digest");
    return file;
  };

  Dataset dataset;
  dataset.manifest = manifest;
  dataset.imported = true;
  ParameterTable parameters;
  for (const auto& [key, value] : manifest)
    if (key.starts_with("model.")) parameters[key.substr(6)] = value;
  dataset.pair = model_pair_from_parameters(parameters);
  dataset.config = sim_config_from_manifest(manifest);
  const std::size_t dim = dataset.pair.dim();

  {
    const std::string file = verified("labels.csv");
    const auto lines = read_lines(file);
    expect_header(lines, 0, "path_id,label", file);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto f = fields(lines[i], 2, file, i + 1);
      require(parse_index(f[0]) == dataset.labels.size(), ErrorKind::schema,
              file + " line " + std::to_string(i + 1) + ": path ids must be consecutive");
      dataset.labels.push_back(parse_label(f[1]));
    }
  }

  if (layout == ExportLayout::long_form) {
    dataset.paths = read_long(verified("paths.csv"), dim, dataset.labels, GridKind::observed);
  } else {
    std::vector<double> times;
    {
      const std::string file = verified("times.csv");
      const auto lines = read_lines(file);
      expect_header(lines, 0, "step_index,time", file);
      for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = fields(lines[i], 2, file, i + 1);
        times.push_back(parse_double(f[1]));
      }
    }
    const std::string file = verified("paths_wide.csv");
    const auto lines = read_lines(file);
    require(!lines.empty(), ErrorKind::schema, file + " is empty");
    std::size_t row = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto f = fields(lines[i], 1 + dim * times.size(), file, i + 1);
      require(row < dataset.labels.size() && parse_label(f[0]) == dataset.labels[row],
              ErrorKind::schema,
              file + " line " + std::to_string(i + 1) + ": label disagrees with labels.csv");
      TimeSeriesPath path;
      path.dim = dim;
      path.grid = GridKind::observed;
      path.times = times;
      for (std::size_t j = 1; j < f.size(); ++j) path.states.push_back(parse_double(f[j]));
      dataset.paths.push_back(std::move(path));
      ++row;
    }
  }
  require(dataset.paths.size() == dataset.labels.size(), ErrorKind::schema,
          "path count differs from label count");

  if (manifest.contains(file_key("fine_paths.csv"))) {
    dataset.fine_paths =
        read_long(verified("fine_paths.csv"), dim, dataset.labels, GridKind::fine);
  }

  require(content_digest(dataset) == dataset.digest(), ErrorKind::digest_mismatch,
          "content digest of " + directory + " does not match its manifest");
  return dataset;
}

void write_scores_csv(const std::string& file, const ScoreSet& scores) {
  scores.validate();
  std::ofstream out = open_out(file);
  out << "# dataset_digest=" << scores.provenance << '\n';
  out << "path_id,label,score,mode\n";
  for (std::size_t i = 0; i < scores.size(); ++i)
    out << scores.path_ids[i] << ',' << scores.labels[i] << ',' << format_double(scores.scores[i])
        << ',' << scores.mode << '\n';
  close_out(out, file);
}

ScoreSet read_scores_csv(const std::string& file) {
  const auto lines = read_lines(file);
  constexpr std::string_view prefix = "# dataset_digest=";
  require(!lines.empty() && lines[0].starts_with(prefix), ErrorKind::schema,
          file + ": first line must be '# dataset_digest=<hex>'");
  expect_header(lines, 1, "path_id,label,score,mode", file);
  ScoreSet scores;
  scores.provenance = lines[0].substr(prefix.size());
  std::set<std::size_t> seen;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = fields(lines[i], 4, file, i + 1);
    const std::size_t id = parse_index(f[0]);
    require(seen.insert(id).second, ErrorKind::schema,
            file + " line " + std::to_string(i + 1) + ": duplicate path_id " + f[0]);
    scores.path_ids.push_back(id);
    scores.labels.push_back(parse_label(f[1]));
    scores.scores.push_back(parse_double(f[2]));
    if (scores.mode.empty()) scores.mode = f[3];
  }
  scores.validate();
  return scores;
}

std::vector<std::string> emit_report(const BenchmarkReport& report, const std::string& directory) {
  require(!report.classifiers.empty(), ErrorKind::invalid_argument,
          "report has an empty classifier selection");
  ensure_directory(directory);
  std::vector<std::string> files;

  {
    std::ostringstream out;
    out << "run,seed,classifier,scope,auc,acc_star\n";
    for (const RunRow& row : report.rows)
      out << row.run << ',' << row.seed << ',' << row.classifier << ',' << row.scope << ','
          << format_double(row.auc) << ',' << format_double(row.acc_star) << '\n';
    write_text(join_path(directory, "runs.csv"), out.str());
    files.push_back("runs.csv");
  }

  std::vector<std::pair<std::string, std::vector<BoxSeries>>> panels = {{"AUC", {}},
                                                                        {"ACC*", {}}};
  {
    std::ostringstream out;
    out << "classifier,scope,metric,count,min,q1,median,q3,max,whisker_low,whisker_high,"
           "outliers\n";
    for (const std::string& c : report.classifiers) {
      std::vector<std::string> scopes;
      for (const RunRow& row : report.rows)
        if (row.classifier == c && std::find(scopes.begin(), scopes.end(), row.scope) == scopes.end())
          scopes.push_back(row.scope);
      std::sort(scopes.begin(), scopes.end());
      for (const std::string& scope : scopes) {
        for (const char* metric : {"auc", "acc_star"}) {
          const FiveNumberSummary s = summarize_runs(report.values(c, scope, metric));
          std::string outliers;
          for (double v : s.outliers) outliers += (outliers.empty() ? "" : ";") + format_double(v);
          out << c << ',' << scope << ',' << metric << ',' << s.count << ','
              << format_double(s.min) << ',' << format_double(s.q1) << ','
              << format_double(s.median) << ',' << format_double(s.q3) << ','
              << format_double(s.max) << ',' << format_double(s.whisker_low) << ','
              << format_double(s.whisker_high) << ',' << outliers << '\n';
          if (scope == report.primary_scope(c))
            panels[std::string_view(metric) == "auc" ? 0 : 1].second.push_back({c, s});
        }
      }
    }
    write_text(join_path(directory, "summary.csv"), out.str());
    files.push_back("summary.csv");
  }

  for (const std::string& c : report.classifiers) {
    auto it = report.curves.find(c);
    if (it == report.curves.end()) continue;
    const RocCurve& curve = it->second;
    std::ostringstream out;
    out << "# n0=" << curve.n0 << ",n1=" << curve.n1 << '\n';
    out << "threshold,fpr,tpr,accepted0,accepted1\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      out << format_double(curve.thresholds[i]) << ',' << format_double(curve.points[i].fpr) << ','
          << format_double(curve.points[i].tpr) << ',' << curve.accepted0[i] << ','
          << curve.accepted1[i] << '\n';
    const std::string name = "roc_" + safe_name(c) + ".csv";
    write_text(join_path(directory, name), out.str());
    files.push_back(name);
  }

  for (const auto& [c, scores] : report.scores) {
    const std::string name = "scores_" + safe_name(c) + ".csv";
    write_scores_csv(join_path(directory, name), scores);
    files.push_back(name);
  }

  write_text(join_path(directory, "roc.svg"), roc_svg("ROC " + report.name, report.curves));
  files.push_back("roc.svg");
  write_text(join_path(directory, "boxplot.svg"),
             boxplot_svg("Runs " + report.name, panels));
  files.push_back("boxplot.svg");
  write_manifest(join_path(directory, "manifest.txt"), report.manifest);
  files.push_back("manifest.txt");
  return files;
}

BenchmarkReport read_report(const std::string& directory) {
  const std::string manifest_file = join_path(directory, "manifest.txt");
  BenchmarkReport report;
  report.manifest = read_manifest(manifest_file);
  const Manifest& m = report.manifest;
  report.name = manifest_value(m, "bench.name", manifest_file);
  report.runs = parse_index(manifest_value(m, "bench.runs", manifest_file));
  report.seed = std::stoull(manifest_value(m, "bench.seed", manifest_file));
  for (const std::string& c : split(manifest_value(m, "bench.classifiers", manifest_file), ','))
    report.classifiers.push_back(c);
  report.setting.case_id = manifest_value(m, "bench.case", manifest_file).front();
  report.setting.index =
      static_cast<int>(parse_int(manifest_value(m, "bench.setting", manifest_file)));

  {
    const std::string file = join_path(directory, "runs.csv");
    const auto lines = read_lines(file);
    expect_header(lines, 0, "run,seed,classifier,scope,auc,acc_star", file);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto f = fields(lines[i], 6, file, i + 1);
      report.rows.push_back({parse_index(f[0]), std::stoull(f[1]), f[2], f[3], parse_double(f[4]),
                             parse_double(f[5])});
    }
  }

  for (const std::string& c : report.classifiers) {
    const std::string file = join_path(directory, "roc_" + safe_name(c) + ".csv");
    if (!fs::exists(file)) continue;
    const auto lines = read_lines(file);
    require(lines.size() >= 2 && lines[0].starts_with("# n0="), ErrorKind::schema,
            file + ": missing count line");
    const auto counts = split(lines[0].substr(2), ',');
    require(counts.size() == 2 && counts[1].starts_with("n1="), ErrorKind::schema,
            file + ": malformed count line");
    RocCurve curve;
    curve.n0 = parse_index(counts[0].substr(3));
    curve.n1 = parse_index(counts[1].substr(3));
    expect_header(lines, 1, "threshold,fpr,tpr,accepted0,accepted1", file);
    for (std::size_t i = 2; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto f = fields(lines[i], 5, file, i + 1);
      curve.thresholds.push_back(parse_double(f[0]));
      curve.points.push_back({parse_double(f[1]), parse_double(f[2])});
      curve.accepted0.push_back(parse_index(f[3]));
      curve.accepted1.push_back(parse_index(f[4]));
    }
    report.curves[c] = std::move(curve);
    const std::string scores_file = join_path(directory, "scores_" + safe_name(c) + ".csv");
    if (fs::exists(scores_file)) report.scores[c] = read_scores_csv(scores_file);
  }
  return report;
}

}  // namespace lrtbench

namespace lrtbench {

namespace {

constexpr std::string_view kRocketMagic = "lrtbench-rocket v1";

std::string vector_line(const char* key, const Eigen::VectorXd& v) {
  std::string line = key;
  for (Eigen::Index i = 0; i < v.size(); ++i) line += ' ' + format_double(v[i]);
  return line + '\n';
}

class TokenReader {
 public:
  TokenReader(std::vector<std::string> lines, std::string file)
      : lines_(std::move(lines)), file_(std::move(file)) {}

  std::vector<std::string> next(std::string_view key) {
    require(at_ < lines_.size(), ErrorKind::schema, file_ + ": truncated before '" + std::string(key) + "'");
    std::vector<std::string> tokens;
    std::istringstream in(lines_[at_]);
    for (std::string t; in >> t;) tokens.push_back(t);
    require(!tokens.empty() && tokens.front() == key, ErrorKind::schema,
            file_ + " line " + std::to_string(at_ + 1) + ": expected '" + std::string(key) + "'");
    ++at_;
    tokens.erase(tokens.begin());
    return tokens;
  }

  Eigen::VectorXd vector(std::string_view key, std::size_t expected) {
    const auto tokens = next(key);
    require(tokens.size() == expected, ErrorKind::schema,
            file_ + ": '" + std::string(key) + "' has " + std::to_string(tokens.size()) +
                " values, expected " + std::to_string(expected));
    Eigen::VectorXd v(static_cast<Eigen::Index>(expected));
    for (std::size_t i = 0; i < expected; ++i) v[static_cast<Eigen::Index>(i)] = parse_double(tokens[i]);
    return v;
  }

  std::size_t count(std::string_view key) {
    const auto tokens = next(key);
    require(tokens.size() == 1, ErrorKind::schema, file_ + ": malformed '" + std::string(key) + "'");
    return static_cast<std::size_t>(parse_int(tokens[0]));
  }

 private:
  std::vector<std::string> lines_;
  std::string file_;
  std::size_t at_ = 1;
};

}  // namespace

void write_rocket_model(const std::string& file, const RocketModel& model) {
  const KernelSet& ks = model.kernels;
  const LinearClassifier& c = model.classifier;
  std::ostringstream out;
  out << kRocketMagic << '\n'
      << "input_length " << ks.input_length << '\n'
      << "channels " << ks.channels << '\n'
      << "seed " << ks.seed << '\n'
      << "kernels " << ks.kernels.size() << '\n';
  for (const RocketKernel& k : ks.kernels) {
    out << "kernel " << k.dilation << ' ' << (k.padding ? 1 : 0) << ' ' << k.channel << ' '
        << format_double(k.bias);
    for (double w : k.weights) out << ' ' << format_double(w);
    out << '\n';
  }
  out << "features " << c.feature_count() << '\n'
      << vector_line("mean", c.mean) << vector_line("scale", c.scale)
      << vector_line("weights", c.weights) << "intercept " << format_double(c.intercept) << '\n'
      << "lambda " << format_double(c.lambda) << '\n'
      << "cv_accuracy " << format_double(c.cv_accuracy) << '\n';
  write_text(file, out.str());
}

RocketModel read_rocket_model(const std::string& file) {
  auto lines = read_lines(file);
  require(!lines.empty() && lines[0] == kRocketMagic, ErrorKind::schema,
          file + ": not a '" + std::string(kRocketMagic) + "' artifact");
  TokenReader in(std::move(lines), file);
  RocketModel model;
  KernelSet& ks = model.kernels;
  ks.input_length = in.count("input_length");
  ks.channels = in.count("channels");
  const auto seed = in.next("seed");
  require(seed.size() == 1, ErrorKind::schema, file + ": malformed 'seed'");
  ks.seed = std::stoull(seed[0]);
  ks.kernels.resize(in.count("kernels"));
  for (RocketKernel& k : ks.kernels) {
    const auto t = in.next("kernel");
    require(t.size() >= 6, ErrorKind::schema, file + ": kernel line too short");
    k.dilation = static_cast<std::size_t>(parse_int(t[0]));
    k.padding = parse_int(t[1]) != 0;
    k.channel = static_cast<std::size_t>(parse_int(t[2]));
    k.bias = parse_double(t[3]);
    for (std::size_t i = 4; i < t.size(); ++i) k.weights.push_back(parse_double(t[i]));
    require(k.dilation >= 1 && k.channel < ks.channels, ErrorKind::schema,
            file + ": kernel fields out of range");
  }
  const std::size_t p = in.count("features");
  require(p == ks.feature_count(), ErrorKind::schema, file + ": feature count mismatch");
  LinearClassifier& c = model.classifier;
  c.mean = in.vector("mean", p);
  c.scale = in.vector("scale", p);
  c.weights = in.vector("weights", p);
  c.intercept = in.vector("intercept", 1)[0];
  c.lambda = in.vector("lambda", 1)[0];
  c.cv_accuracy = in.vector("cv_accuracy", 1)[0];
  return model;
}

}  // namespace lrtbench
