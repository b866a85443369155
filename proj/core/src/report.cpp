#include "psds/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "psds/error.hpp"

namespace psds {

using Json = nlohmann::ordered_json;

std::string_view to_string(ReportKind kind) noexcept {
  switch (kind) {
    case ReportKind::Counts: return "counts";
    case ReportKind::F1: return "f1";
    case ReportKind::Psds: return "psds";
    case ReportKind::Roc: return "roc";
  }
  return "counts";
}

std::string_view to_string(MatchingMode mode) noexcept {
  return mode == MatchingMode::Collar ? "collar" : "intersection";
}

double round_significant(double value) noexcept {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

namespace {

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

double num(double value) { return round_significant(value); }

std::string rate_unit(const EvalParams& params) {
  return "events per " + std::string(to_string(params.time_unit));
}

// ---------------------------------------------------------------- builders

EvaluationReport base_report(ReportKind kind, const Dataset& dataset,
                             const EvalParams& params) {
  EvaluationReport r;
  r.kind = kind;
  r.params = params;
  r.total_duration_s = dataset.total_duration();
  r.classes = dataset.classes();
  return r;
}

}  // namespace

EvaluationReport make_counts_report(const CountsMatrix& counts,
                                    const Dataset& dataset,
                                    const EvalParams& params) {
  auto r = base_report(ReportKind::Counts, dataset, params);
  r.counts = counts;
  r.rates = compute_rates(counts, dataset, params);
  return r;
}

EvaluationReport make_f1_report(const CountsMatrix& counts,
                                const Dataset& dataset,
                                const EvalParams& params,
                                std::optional<CollarParams> collar) {
  auto r = base_report(ReportKind::F1, dataset, params);
  if (collar) {
    r.matching = MatchingMode::Collar;
    r.collar = collar;
  }
  r.counts = counts;
  r.f1 = f1_scores(counts);
  return r;
}

EvaluationReport make_sweep_report(const SweepResult& result,
                                   const Dataset& dataset,
                                   const EvalParams& params, bool with_score) {
  auto r = base_report(with_score ? ReportKind::Psds : ReportKind::Roc, dataset,
                       params);
  SweepBlock block;
  block.op_points = result.op_points;
  for (const auto& [label, curve] : result.curves) {
    block.class_curves.emplace(label, curve.breakpoints());
  }
  block.psd_roc = result.roc.points;
  if (with_score) block.psds = result.roc.psds;
  r.sweep = std::move(block);
  return r;
}

// ------------------------------------------------------------------- JSON

namespace {

Json curve_json(const std::vector<CurvePoint>& points, const char* y_key) {
  Json arr = Json::array();
  for (const auto& p : points) {
    Json o;
    o["efpr"] = num(p.efpr);
    o[y_key] = num(p.tpr);
    arr.push_back(std::move(o));
  }
  return arr;
}

Json to_json(const EvaluationReport& r) {
  Json j;
  j["report"] = to_string(r.kind);
  j["matching"] = to_string(r.matching);
  j["units"] = {{"time", "second"},
                {"rate", rate_unit(r.params)},
                {"ratio", "fraction"}};
  j["params"] = {{"rho_dtc", num(r.params.rho_dtc)},
                 {"rho_gtc", num(r.params.rho_gtc)},
                 {"rho_cttc", num(r.params.rho_cttc)},
                 {"alpha_ct", num(r.params.alpha_ct)},
                 {"alpha_st", num(r.params.alpha_st)},
                 {"e_max", num(r.params.e_max)},
                 {"time_unit", to_string(r.params.time_unit)},
                 {"clamp_etpr", r.params.clamp_etpr}};
  if (r.collar) {
    j["collar"] = {{"collar_s", num(r.collar->collar)},
                   {"offset_ratio", num(r.collar->offset_ratio)},
                   {"check_offset", r.collar->check_offset}};
  }
  j["dataset"] = {{"total_duration_s", num(r.total_duration_s)},
                  {"classes", r.classes}};

  if (r.counts) {
    Json counts = Json::object();
    for (const auto& [label, c] : r.counts->classes) {
      counts[label] = {{"n_tp", c.n_tp},
                       {"n_fp", c.n_fp},
                       {"n_sys", c.n_sys},
                       {"n_gt", c.n_gt},
                       {"n_relevant", c.n_relevant}};
    }
    j["counts"] = std::move(counts);
    if (r.matching == MatchingMode::Intersection) {
      Json ct = Json::object();
      for (const auto& [label, _] : r.counts->classes) {
        Json row = Json::object();
        for (const auto& [other, __] : r.counts->classes) {
          if (other != label) row[other] = r.counts->ct(label, other);
        }
        ct[label] = std::move(row);
      }
      j["cross_trigger_counts"] = std::move(ct);
    }
  }
  if (r.rates) {
    Json rates = Json::object();
    for (const auto& [label, cr] : *r.rates) {
      Json ct = Json::object();
      for (const auto& [other, v] : cr.ct_rates) ct[other] = num(v);
      rates[label] = {{"tp_ratio", num(cr.tp_ratio)},
                      {"fp_rate", num(cr.fp_rate)},
                      {"efpr", num(cr.efpr)},
                      {"ct_rates", std::move(ct)}};
    }
    j["rates"] = std::move(rates);
  }
  if (r.f1) {
    Json per = Json::object();
    for (const auto& [label, v] : r.f1->per_class) per[label] = num(v);
    j["f1"] = {{"per_class", std::move(per)},
               {"macro", num(r.f1->macro)},
               {"micro", num(r.f1->micro)}};
  }
  if (r.sweep) {
    const auto& s = *r.sweep;
    if (s.psds) j["psds"] = num(*s.psds);
    j["psd_roc"] = curve_json(s.psd_roc, "etpr");
    Json curves = Json::object();
    for (const auto& [label, pts] : s.class_curves) {
      curves[label] = curve_json(pts, "tpr");
    }
    j["class_curves"] = std::move(curves);
    Json ops = Json::object();
    for (const auto& [label, pts] : s.op_points) {
      Json arr = Json::array();
      for (const auto& p : pts) {
        arr.push_back({{"op_id", p.op_id},
                       {"efpr", num(p.efpr)},
                       {"tp_ratio", num(p.tp_ratio)}});
      }
      ops[label] = std::move(arr);
    }
    j["operating_points"] = std::move(ops);
  }
  return j;
}

ReportKind kind_from(const std::string& s) {
  if (s == "counts") return ReportKind::Counts;
  if (s == "f1") return ReportKind::F1;
  if (s == "psds") return ReportKind::Psds;
  if (s == "roc") return ReportKind::Roc;
  throw Error(ErrorCode::BadRow, "unknown report kind '" + s + "'");
}

std::vector<CurvePoint> curve_from(const Json& arr, const char* y_key) {
  std::vector<CurvePoint> out;
  for (const auto& o : arr) {
    out.push_back({o.at("efpr").get<double>(), o.at(y_key).get<double>()});
  }
  return out;
}

EvaluationReport from_json(const Json& j) {
  EvaluationReport r;
  r.kind = kind_from(j.at("report").get<std::string>());
  const auto matching = j.at("matching").get<std::string>();
  if (matching == "collar") {
    r.matching = MatchingMode::Collar;
  } else if (matching != "intersection") {
    throw Error(ErrorCode::BadRow, "unknown matching mode '" + matching + "'");
  }
  const auto& p = j.at("params");
  r.params.rho_dtc = p.at("rho_dtc").get<double>();
  r.params.rho_gtc = p.at("rho_gtc").get<double>();
  r.params.rho_cttc = p.at("rho_cttc").get<double>();
  r.params.alpha_ct = p.at("alpha_ct").get<double>();
  r.params.alpha_st = p.at("alpha_st").get<double>();
  r.params.e_max = p.at("e_max").get<double>();
  r.params.time_unit = parse_time_unit(p.at("time_unit").get<std::string>());
  r.params.clamp_etpr = p.at("clamp_etpr").get<bool>();
  if (j.contains("collar")) {
    const auto& c = j.at("collar");
    r.collar = CollarParams{c.at("collar_s").get<double>(),
                            c.at("offset_ratio").get<double>(),
                            c.at("check_offset").get<bool>()};
  }
  const auto& d = j.at("dataset");
  r.total_duration_s = d.at("total_duration_s").get<double>();
  r.classes = d.at("classes").get<std::vector<std::string>>();

  if (j.contains("counts")) {
    CountsMatrix m;
    for (const auto& [label, c] : j.at("counts").items()) {
      ClassCounts cc;
      cc.n_tp = c.at("n_tp").get<std::size_t>();
      cc.n_fp = c.at("n_fp").get<std::size_t>();
      cc.n_sys = c.at("n_sys").get<std::size_t>();
      cc.n_gt = c.at("n_gt").get<std::size_t>();
      cc.n_relevant = c.at("n_relevant").get<std::size_t>();
      m.classes.emplace(label, std::move(cc));
    }
    if (j.contains("cross_trigger_counts")) {
      for (const auto& [label, row] : j.at("cross_trigger_counts").items()) {
        auto& cc = m.classes.at(label);
        for (const auto& [other, v] : row.items()) {
          const auto n = v.get<std::size_t>();
          if (n > 0) cc.ct.emplace(other, n);
        }
      }
    }
    r.counts = std::move(m);
  }
  if (j.contains("rates")) {
    RatesTable t;
    for (const auto& [label, o] : j.at("rates").items()) {
      ClassRates cr;
      cr.tp_ratio = o.at("tp_ratio").get<double>();
      cr.fp_rate = o.at("fp_rate").get<double>();
      cr.efpr = o.at("efpr").get<double>();
      for (const auto& [other, v] : o.at("ct_rates").items()) {
        cr.ct_rates.emplace(other, v.get<double>());
      }
      t.emplace(label, std::move(cr));
    }
    r.rates = std::move(t);
  }
  if (j.contains("f1")) {
    F1Report f;
    const auto& o = j.at("f1");
    for (const auto& [label, v] : o.at("per_class").items()) {
      f.per_class.emplace(label, v.get<double>());
    }
    f.macro = o.at("macro").get<double>();
    f.micro = o.at("micro").get<double>();
    r.f1 = std::move(f);
  }
  if (j.contains("psd_roc")) {
    SweepBlock s;
    if (j.contains("psds")) s.psds = j.at("psds").get<double>();
    s.psd_roc = curve_from(j.at("psd_roc"), "etpr");
    for (const auto& [label, arr] : j.at("class_curves").items()) {
      s.class_curves.emplace(label, curve_from(arr, "tpr"));
    }
    for (const auto& [label, arr] : j.at("operating_points").items()) {
      auto& pts = s.op_points[label];
      for (const auto& o : arr) {
        pts.push_back({o.at("efpr").get<double>(), o.at("tp_ratio").get<double>(),
                       o.at("op_id").get<std::string>()});
      }
    }
    r.sweep = std::move(s);
  }
  return r;
}

// -------------------------------------------------------------------- TSV

void tsv_block(std::ostringstream& os, bool& first, std::string_view name) {
  if (!first) os << '\n';
  first = false;
  os << "# " << name << '\n';
}

std::string to_tsv(const EvaluationReport& r) {
  std::ostringstream os;
  bool first = true;
  const std::string per = "_per_" + std::string(to_string(r.params.time_unit));

  tsv_block(os, first, "params");
  os << "key\tvalue\n";
  os << "report\t" << to_string(r.kind) << '\n';
  os << "matching\t" << to_string(r.matching) << '\n';
  os << "rho_dtc\t" << fmt(r.params.rho_dtc) << '\n';
  os << "rho_gtc\t" << fmt(r.params.rho_gtc) << '\n';
  os << "rho_cttc\t" << fmt(r.params.rho_cttc) << '\n';
  os << "alpha_ct\t" << fmt(r.params.alpha_ct) << '\n';
  os << "alpha_st\t" << fmt(r.params.alpha_st) << '\n';
  os << "e_max" << per << '\t' << fmt(r.params.e_max) << '\n';
  os << "time_unit\t" << to_string(r.params.time_unit) << '\n';
  os << "clamp_etpr\t" << (r.params.clamp_etpr ? "true" : "false") << '\n';
  if (r.collar) {
    os << "collar_s\t" << fmt(r.collar->collar) << '\n';
    os << "collar_offset_ratio\t" << fmt(r.collar->offset_ratio) << '\n';
    os << "collar_check_offset\t" << (r.collar->check_offset ? "true" : "false")
       << '\n';
  }
  os << "total_duration_s\t" << fmt(r.total_duration_s) << '\n';

  if (r.counts) {
    tsv_block(os, first, "counts");
    os << "class\tn_tp\tn_fp\tn_sys\tn_gt\tn_relevant\n";
    for (const auto& [label, c] : r.counts->classes) {
      os << label << '\t' << c.n_tp << '\t' << c.n_fp << '\t' << c.n_sys << '\t'
         << c.n_gt << '\t' << c.n_relevant << '\n';
    }
  }
  if (r.counts && r.matching == MatchingMode::Intersection) {
    tsv_block(os, first, "cross_triggers");
    os << "class\tother_class\tct_count";
    if (r.rates) os << "\tct_rate" << per;
    os << '\n';
    for (const auto& [label, _] : r.counts->classes) {
      for (const auto& [other, __] : r.counts->classes) {
        if (other == label) continue;
        os << label << '\t' << other << '\t' << r.counts->ct(label, other);
        if (r.rates) {
          const auto& rates = r.rates->at(label).ct_rates;
          auto it = rates.find(other);
          os << '\t' << fmt(it == rates.end() ? 0.0 : it->second);
        }
        os << '\n';
      }
    }
  }
  if (r.rates) {
    tsv_block(os, first, "rates");
    os << "class\ttp_ratio\tfp_rate" << per << "\tefpr" << per << '\n';
    for (const auto& [label, cr] : *r.rates) {
      os << label << '\t' << fmt(cr.tp_ratio) << '\t' << fmt(cr.fp_rate) << '\t'
         << fmt(cr.efpr) << '\n';
    }
  }
  if (r.f1) {
    tsv_block(os, first, "f1");
    os << "class\tf1\n";
    for (const auto& [label, v] : r.f1->per_class) {
      os << label << '\t' << fmt(v) << '\n';
    }
    tsv_block(os, first, "f1_summary");
    os << "key\tvalue\n";
    os << "macro_f1\t" << fmt(r.f1->macro) << '\n';
    os << "micro_f1\t" << fmt(r.f1->micro) << '\n';
  }
  if (r.sweep) {
    const auto& s = *r.sweep;
    if (s.psds) {
      tsv_block(os, first, "psds");
      os << "key\tvalue\n";
      os << "psds\t" << fmt(*s.psds) << '\n';
    }
    tsv_block(os, first, "psd_roc");
    os << "efpr\tetpr\n";
    for (const auto& p : s.psd_roc) os << fmt(p.efpr) << '\t' << fmt(p.tpr) << '\n';
    for (const auto& [label, pts] : s.class_curves) {
      tsv_block(os, first, "class_curve " + label);
      os << "efpr\ttpr_" << label << '\n';
      for (const auto& p : pts) os << fmt(p.efpr) << '\t' << fmt(p.tpr) << '\n';
    }
    tsv_block(os, first, "operating_points");
    os << "class\top_id\tefpr" << per << "\ttp_ratio\n";
    for (const auto& [label, pts] : s.op_points) {
      for (const auto& p : pts) {
        os << label << '\t' << p.op_id << '\t' << fmt(p.efpr) << '\t'
           << fmt(p.tp_ratio) << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace

std::string emit_report(const EvaluationReport& report, ReportFormat format) {
  if (format == ReportFormat::Tsv) return to_tsv(report);
  return to_json(report).dump(2) + "\n";
}

EvaluationReport parse_report_json(std::string_view text) {
  try {
    return from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BadRow, std::string("invalid report: ") + e.what());
  }
}

}  // namespace psds
