#include "psds/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include "CLI11.hpp"
#include "psds/error.hpp"
#include "psds/io.hpp"
#include "psds/report.hpp"

namespace psds {

namespace {

struct Options {
  std::string gt;
  std::string durations;
  std::string det;
  std::string det_dir;
  std::string out;
  std::string format = "json";
  std::string unit = "hour";
  EvalParams params;
  bool no_clamp = false;

  std::optional<double> collar;
  double collar_ratio = 0.2;
  bool no_offset_check = false;
};

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--gt", o.gt, "Ground-truth event table (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd.add_option("--durations", o.durations, "File durations table (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd.add_option("--dtc", o.params.rho_dtc, "Detection tolerance ratio")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--gtc", o.params.rho_gtc, "Ground-truth intersection ratio")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--cttc", o.params.rho_cttc, "Cross-trigger tolerance ratio")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--alpha-ct", o.params.alpha_ct, "Cross-trigger cost weight")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--alpha-st", o.params.alpha_st,
                 "Cross-class instability cost weight")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--emax", o.params.e_max,
                 "Maximum effective FP rate, in events per --unit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--unit", o.unit, "Time unit of reported rates")
      ->capture_default_str()
      ->check(CLI::IsMember({"second", "minute", "hour"}));
  cmd.add_option("--out", o.out, "Write the report here instead of stdout");
  cmd.add_option("--format", o.format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "tsv"}));
  cmd.add_flag("--no-clamp", o.no_clamp,
               "Keep negative effective TP ratios instead of flooring at 0");
}

int write_report(const EvaluationReport& report, const Options& o,
                 std::ostream& out, std::ostream& err) {
  const auto format = o.format == "tsv" ? ReportFormat::Tsv : ReportFormat::Json;
  const auto text = emit_report(report, format);
  if (o.out.empty()) {
    out << text;
    out.flush();
    return kExitOk;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file || !(file << text)) {
    err << "psds-eval: " << o.out << ": cannot write report\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Polyphonic sound event detection evaluation", "psds-eval"};
  app.require_subcommand(1);

  Options o;
  auto* counts = app.add_subcommand(
      "counts", "TP/FP/cross-trigger counts and rates of one operating point");
  add_common(*counts, o);
  counts->add_option("--det", o.det, "Detection event table (TSV)")
      ->required()
      ->check(CLI::ExistingFile);

  auto* f1 = app.add_subcommand("f1", "F1-scores of one operating point");
  add_common(*f1, o);
  f1->add_option("--det", o.det, "Detection event table (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* collar_opt =
      f1->add_option("--collar", o.collar,
                     "Use collar matching with this onset collar in seconds")
          ->check(CLI::NonNegativeNumber);
  f1->add_option("--collar-ratio", o.collar_ratio,
                 "Offset collar as a fraction of the ground-truth duration")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber)
      ->needs(collar_opt);
  f1->add_flag("--no-offset-check", o.no_offset_check,
               "Ignore offsets in collar matching")
      ->needs(collar_opt);

  auto* psds_cmd = app.add_subcommand(
      "psds", "PSDS and PSD-ROC over a directory of operating points");
  add_common(*psds_cmd, o);
  psds_cmd->add_option("--det-dir", o.det_dir,
                       "Directory with one *.tsv detection table per operating point")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto* roc = app.add_subcommand(
      "roc", "Per-class and merged ROC curves over a directory of operating points");
  add_common(*roc, o);
  roc->add_option("--det-dir", o.det_dir,
                  "Directory with one *.tsv detection table per operating point")
      ->required()
      ->check(CLI::ExistingDirectory);

  try {
    // CLI11 consumes the vector from the back
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help()
                                          : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "psds-eval: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsageError;
  }

  try {
    o.params.time_unit = parse_time_unit(o.unit);
    o.params.clamp_etpr = !o.no_clamp;
    o.params.validate();

    const auto dataset = load_dataset(o.gt, o.durations);

    if (counts->parsed()) {
      const auto dets = load_detections(o.det, dataset);
      const auto m = count_matrix(dets, dataset, o.params);
      return write_report(make_counts_report(m, dataset, o.params), o, out, err);
    }
    if (f1->parsed()) {
      const auto dets = load_detections(o.det, dataset);
      if (o.collar) {
        const CollarParams cp{*o.collar, o.collar_ratio, !o.no_offset_check};
        const auto m = collar_count_matrix(dets, dataset, cp);
        return write_report(make_f1_report(m, dataset, o.params, cp), o, out,
                            err);
      }
      const auto m = count_matrix(dets, dataset, o.params);
      return write_report(make_f1_report(m, dataset, o.params), o, out, err);
    }
    const auto sweep = sweep_operating_points(o.det_dir, dataset, o.params);
    const auto result = evaluate_sweep(sweep, dataset, o.params);
    return write_report(make_sweep_report(result, dataset, o.params,
                                          psds_cmd->parsed()),
                        o, out, err);
  } catch (const Error& e) {
    err << "psds-eval: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "psds-eval: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace psds
