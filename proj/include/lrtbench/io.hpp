#pragma once

#include <string>
#include <vector>

#include "lrtbench/bench.hpp"
#include "lrtbench/scores.hpp"
#include "lrtbench/simulate.hpp"

namespace lrtbench {

/// Flat `key=value` lines in key order.
void write_manifest(const std::string& file, const Manifest& manifest);
Manifest read_manifest(const std::string& file);

enum class ExportLayout { long_form, wide };
std::string_view to_string(ExportLayout layout);
ExportLayout parse_layout(std::string_view name);

struct ExportBundle {
  std::string directory;
  ExportLayout layout = ExportLayout::long_form;
  std::vector<std::string> files;  // relative names, manifest last
};

/// Long layout: paths.csv with path_id,label,step_index,time,x_1..x_d.
/// Wide layout: paths_wide.csv with label then x_<step>_<coord>, plus times.csv.
/// Always labels.csv and manifest.txt; fine_paths.csv (long) when fine paths
/// are retained. The manifest records the SHA-256 of every data file.
ExportBundle export_dataset(const Dataset& dataset, const std::string& directory,
                            ExportLayout layout = ExportLayout::long_form);

/// Verifies file digests and the content digest; restores fine paths when present.
Dataset import_dataset(const std::string& directory);

/// `# dataset_digest=<hex>` then path_id,label,score,mode rows.
void write_scores_csv(const std::string& file, const ScoreSet& scores);
ScoreSet read_scores_csv(const std::string& file);

/// runs.csv, summary.csv, roc_<classifier>.csv, scores_<classifier>.csv,
/// roc.svg, boxplot.svg and
/// manifest.txt. Returns the written file names.
std::vector<std::string> emit_report(const BenchmarkReport& report, const std::string& directory);

/// Reads back what emit_report wrote (rows, curves, manifest, classifiers).
BenchmarkReport read_report(const std::string& directory);

/// Text artifact, first line "lrtbench-rocket v1"; doubles at 17 digits so a
/// reloaded model reproduces decision values bit for bit.
void write_rocket_model(const std::string& file, const RocketModel& model);
RocketModel read_rocket_model(const std::string& file);

/// Creates the directory (and parents) if needed.
void ensure_directory(const std::string& directory);

}  // namespace lrtbench
