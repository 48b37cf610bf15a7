#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "peerinfo/classifier.hpp"
#include "peerinfo/clustering.hpp"
#include "peerinfo/elicitation.hpp"
#include "peerinfo/errors.hpp"
#include "peerinfo/simulator.hpp"
#include "peerinfo/verify.hpp"
#include "peerinfo/welfare.hpp"

namespace peerinfo {
namespace io {

// ---- CSV primitives (RFC 4180) ---------------------------------------------

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Splits one CSV record, honoring quoted fields.
inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

/// Floats serialize with 9 significant digits.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

inline std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : content) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(std::move(cur));
  return lines;
}

/// Accumulates row-level problems so a malformed file reports every
/// offending row at once.
class ErrorLog {
public:
  explicit ErrorLog(std::string path) : path_(std::move(path)) {}
  void add(std::size_t line_no, const std::string& message) {
    std::string entry = path_ + ":" + std::to_string(line_no) + ": " + message;
    if (!joined_.empty()) joined_ += "\n";
    joined_ += entry;
    ++count_;
  }
  void add(const std::string& message) {
    std::string entry = path_ + ": " + message;
    if (!joined_.empty()) joined_ += "\n";
    joined_ += entry;
    ++count_;
  }
  void throw_if_any() const {
    if (count_ > 0) throw ValidationError(joined_);
  }

private:
  std::string path_;
  std::string joined_;
  std::size_t count_ = 0;
};

inline std::optional<long> parse_int(const std::string& s) {
  long v = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

// ---- label mappings ----------------------------------------------------------

inline std::string scenario_label(Scenario s) { return s == Scenario::ExAnte ? "exante" : "expost"; }

inline std::optional<Scenario> scenario_from_label(const std::string& s) {
  if (s == "exante") return Scenario::ExAnte;
  if (s == "expost") return Scenario::ExPost;
  return std::nullopt;
}

inline std::string arm_label(TreatmentArm a) {
  switch (a) {
    case TreatmentArm::Control: return "control";
    case TreatmentArm::ExAnteInfo: return "exante";
    case TreatmentArm::ExPostInfo: return "expost";
    case TreatmentArm::ChooseYourInfo: return "choose";
  }
  return "control";
}

inline std::optional<TreatmentArm> arm_from_label(const std::string& s) {
  if (s == "control") return TreatmentArm::Control;
  if (s == "exante") return TreatmentArm::ExAnteInfo;
  if (s == "expost") return TreatmentArm::ExPostInfo;
  if (s == "choose") return TreatmentArm::ChooseYourInfo;
  return std::nullopt;
}

// ---- schedule CSV -----------------------------------------------------------
// columns: worker_id, scenario in {exante,expost}, bin in 1..9,
//          prefer_info in {0,1}, wtp_cents in [0,50]

inline constexpr const char* kScheduleHeader = "worker_id,scenario,bin,prefer_info,wtp_cents";

inline std::string render_schedules(
    const std::vector<std::pair<std::string, WtpSchedule>>& schedules) {
  std::string out = kScheduleHeader;
  out += '\n';
  for (const auto& [id, schedule] : schedules) {
    for (Scenario s : {Scenario::ExAnte, Scenario::ExPost}) {
      for (int b = 0; b < kNumBins; ++b) {
        const PerformanceBin bin = static_cast<PerformanceBin>(b);
        out += csv_escape(id) + "," + scenario_label(s) + "," + std::to_string(bin_id(bin)) +
               "," + (schedule.prefer_info(s, bin) ? "1" : "0") + "," +
               std::to_string(schedule.wtp_cents(s, bin)) + "\n";
      }
    }
  }
  return out;
}

inline void write_schedules(const std::string& path,
                            const std::vector<std::pair<std::string, WtpSchedule>>& schedules) {
  write_file(path, render_schedules(schedules));
}

/// Parses and validates a schedule file. Every worker must have a complete
/// 2x9 grid; all offending rows are reported together.
inline std::vector<std::pair<std::string, WtpSchedule>> ingest_schedules(const std::string& path) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  ErrorLog errors(path);
  if (lines.empty() || lines[0] != kScheduleHeader) {
    errors.add(1, std::string("expected header '") + kScheduleHeader + "'");
    errors.throw_if_any();
  }

  struct Partial {
    WtpSchedule schedule;
    std::array<std::array<bool, kNumBins>, 2> seen{};
  };
  std::vector<std::string> order;
  std::map<std::string, Partial> partial;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = csv_split(lines[i]);
    if (f.size() != 5) {
      errors.add(line_no, "expected 5 fields, got " + std::to_string(f.size()));
      continue;
    }
    const std::string& id = f[0];
    const auto scenario = scenario_from_label(f[1]);
    const auto bin_no = parse_int(f[2]);
    const auto prefer = parse_int(f[3]);
    const auto cents = parse_int(f[4]);
    if (id.empty()) errors.add(line_no, "empty worker_id");
    if (!scenario) errors.add(line_no, "scenario must be 'exante' or 'expost': '" + f[1] + "'");
    if (!bin_no || *bin_no < 1 || *bin_no > kNumBins)
      errors.add(line_no, "bin must be an integer in 1..9: '" + f[2] + "'");
    if (!prefer || (*prefer != 0 && *prefer != 1))
      errors.add(line_no, "prefer_info must be 0 or 1: '" + f[3] + "'");
    if (!cents || *cents < 0 || *cents > 50)
      errors.add(line_no, "wtp_cents out of range [0,50]: '" + f[4] + "'");
    if (id.empty() || !scenario || !bin_no || *bin_no < 1 || *bin_no > kNumBins || !prefer ||
        (*prefer != 0 && *prefer != 1) || !cents || *cents < 0 || *cents > 50)
      continue;

    if (!partial.count(id)) order.push_back(id);
    Partial& p = partial[id];
    const int s_idx = *scenario == Scenario::ExAnte ? 0 : 1;
    const int b_idx = static_cast<int>(*bin_no) - 1;
    if (p.seen[s_idx][b_idx]) {
      errors.add(line_no, "duplicate entry for worker '" + id + "', scenario " + f[1] + ", bin " +
                              f[2]);
      continue;
    }
    p.seen[s_idx][b_idx] = true;
    const int signed_wtp = WtpSchedule::compose_signed(*prefer == 1, static_cast<int>(*cents));
    (s_idx == 0 ? p.schedule.exante : p.schedule.expost)[b_idx] = signed_wtp;
  }

  for (const std::string& id : order) {
    const Partial& p = partial[id];
    for (int s = 0; s < 2; ++s)
      for (int b = 0; b < kNumBins; ++b)
        if (!p.seen[s][b])
          errors.add("worker '" + id + "': incomplete schedule (missing " +
                     (s == 0 ? "exante" : "expost") + " bin " + std::to_string(b + 1) + ")");
  }
  errors.throw_if_any();

  std::vector<std::pair<std::string, WtpSchedule>> result;
  result.reserve(order.size());
  for (const std::string& id : order) result.emplace_back(id, partial[id].schedule);
  return result;
}

// ---- worker record CSV --------------------------------------------------------

inline const std::string kWorkersHeader = [] {
  std::string h = "worker_id,model,type,arm,e1,e2,bin";
  for (int b = 1; b <= kNumBins; ++b) h += ",wtp_exante_" + std::to_string(b);
  for (int b = 1; b <= kNumBins; ++b) h += ",wtp_expost_" + std::to_string(b);
  h += ",bdm_scenario,bdm_coin_direct,bdm_draw_cents,bdm_implemented,bdm_payment_cents,"
       "bdm_final_bonus_cents,bdm_receives_info";
  return h;
}();

inline std::string render_workers(const std::vector<WorkerRecord>& records) {
  std::string out = kWorkersHeader;
  out += '\n';
  for (const WorkerRecord& r : records) {
    out += csv_escape(r.worker_id) + "," + r.model_label + "," + std::to_string(type_id(r.type)) +
           "," + (r.arm ? arm_label(*r.arm) : "") + "," + std::to_string(r.e1) + "," +
           (r.e2 >= 0 ? std::to_string(r.e2) : "") + "," + std::to_string(bin_id(r.bin));
    for (int b = 0; b < kNumBins; ++b) out += "," + std::to_string(r.schedule.exante[b]);
    for (int b = 0; b < kNumBins; ++b) out += "," + std::to_string(r.schedule.expost[b]);
    if (r.bdm) {
      out += "," + scenario_label(r.bdm->scenario_that_counts) + "," +
             (r.bdm->coin_direct ? "1" : "0") + "," + std::to_string(r.bdm->draw_cents) + "," +
             (r.bdm->outcome.implemented ? "1" : "0") + "," +
             std::to_string(r.bdm->outcome.payment_cents) + "," +
             std::to_string(r.bdm->outcome.final_bonus_cents) + "," +
             (r.bdm->outcome.receives_info ? "1" : "0");
    } else {
      out += ",,,,,,,";
    }
    out += "\n";
  }
  return out;
}

inline void write_workers(const std::string& path, const std::vector<WorkerRecord>& records) {
  write_file(path, render_workers(records));
}

inline std::vector<WorkerRecord> ingest_workers(const std::string& path) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  ErrorLog errors(path);
  if (lines.empty() || lines[0] != kWorkersHeader) {
    errors.add(1, "unexpected workers header");
    errors.throw_if_any();
  }
  std::vector<WorkerRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = csv_split(lines[i]);
    if (f.size() != 7 + 2 * kNumBins + 7) {
      errors.add(line_no, "wrong field count");
      continue;
    }
    WorkerRecord r;
    r.worker_id = f[0];
    r.model_label = f[1];
    bool ok = !r.worker_id.empty();
    if (!ok) errors.add(line_no, "empty worker_id");

    const auto type_no = parse_int(f[2]);
    if (type_no && *type_no >= 1 && *type_no <= 4) {
      r.type = type_from_id(static_cast<int>(*type_no));
    } else {
      errors.add(line_no, "type must be in 1..4: '" + f[2] + "'");
      ok = false;
    }
    if (!f[3].empty()) {
      const auto arm = arm_from_label(f[3]);
      if (arm) {
        r.arm = arm;
      } else {
        errors.add(line_no, "unknown arm label: '" + f[3] + "'");
        ok = false;
      }
    }
    const auto e1 = parse_int(f[4]);
    if (e1 && *e1 >= 0) {
      r.e1 = static_cast<int>(*e1);
    } else {
      errors.add(line_no, "e1 must be a nonnegative integer: '" + f[4] + "'");
      ok = false;
    }
    if (!f[5].empty()) {
      const auto e2 = parse_int(f[5]);
      if (e2 && *e2 >= 0) {
        r.e2 = static_cast<int>(*e2);
      } else {
        errors.add(line_no, "e2 must be a nonnegative integer: '" + f[5] + "'");
        ok = false;
      }
    }
    const auto bin_no = parse_int(f[6]);
    if (bin_no && *bin_no >= 1 && *bin_no <= kNumBins) {
      r.bin = bin_from_id(static_cast<int>(*bin_no));
    } else {
      errors.add(line_no, "bin must be in 1..9: '" + f[6] + "'");
      ok = false;
    }
    for (int b = 0; b < 2 * kNumBins; ++b) {
      const auto v = parse_int(f[7 + b]);
      if (!v || *v < -50 || *v > 50) {
        errors.add(line_no, "schedule entry out of range [-50,50]: '" + f[7 + b] + "'");
        ok = false;
        continue;
      }
      if (b < kNumBins)
        r.schedule.exante[b] = static_cast<int>(*v);
      else
        r.schedule.expost[b - kNumBins] = static_cast<int>(*v);
    }
    const std::size_t bdm0 = 7 + 2 * kNumBins;
    if (!f[bdm0].empty()) {
      BdmRecord bdm;
      const auto scen = scenario_from_label(f[bdm0]);
      const auto coin = parse_int(f[bdm0 + 1]);
      const auto draw = parse_int(f[bdm0 + 2]);
      const auto impl = parse_int(f[bdm0 + 3]);
      const auto pay = parse_int(f[bdm0 + 4]);
      const auto bonus = parse_int(f[bdm0 + 5]);
      const auto recv = parse_int(f[bdm0 + 6]);
      if (!scen || !coin || !draw || !impl || !pay || !bonus || !recv) {
        errors.add(line_no, "malformed bdm fields");
        ok = false;
      } else {
        bdm.scenario_that_counts = *scen;
        bdm.coin_direct = *coin == 1;
        bdm.draw_cents = static_cast<int>(*draw);
        bdm.outcome.implemented = *impl == 1;
        bdm.outcome.payment_cents = static_cast<int>(*pay);
        bdm.outcome.final_bonus_cents = static_cast<int>(*bonus);
        bdm.outcome.receives_info = *recv == 1;
        r.bdm = bdm;
      }
    }
    if (ok) records.push_back(std::move(r));
  }
  errors.throw_if_any();
  return records;
}

// ---- embedding file ------------------------------------------------------------
// header: d=<int>; rows: worker_id followed by d comma-separated floats

inline std::string render_embeddings(const EmbeddingMatrix& X) {
  std::string out = "d=" + std::to_string(X.dim) + "\n";
  for (std::size_t i = 0; i < X.rows(); ++i) {
    out += csv_escape(X.ids[i]);
    const double* row = X.row(i);
    for (std::size_t j = 0; j < X.dim; ++j) out += "," + fmt_double(row[j]);
    out += "\n";
  }
  return out;
}

inline void write_embeddings(const std::string& path, const EmbeddingMatrix& X) {
  write_file(path, render_embeddings(X));
}

inline EmbeddingMatrix ingest_embeddings(const std::string& path) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  ErrorLog errors(path);
  if (lines.empty() || lines[0].rfind("d=", 0) != 0) {
    errors.add(1, "expected header 'd=<int>'");
    errors.throw_if_any();
  }
  const auto dim = parse_int(lines[0].substr(2));
  if (!dim || *dim < 1) {
    errors.add(1, "embedding dimension must be a positive integer");
    errors.throw_if_any();
  }
  EmbeddingMatrix X;
  X.dim = static_cast<std::size_t>(*dim);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = csv_split(lines[i]);
    if (f.size() != X.dim + 1) {
      errors.add(line_no, "expected " + std::to_string(X.dim + 1) + " fields, got " +
                              std::to_string(f.size()));
      continue;
    }
    if (f[0].empty()) {
      errors.add(line_no, "empty worker_id");
      continue;
    }
    bool row_ok = true;
    std::vector<double> row(X.dim);
    for (std::size_t j = 0; j < X.dim; ++j) {
      const auto v = parse_double(f[j + 1]);
      if (!v || !std::isfinite(*v)) {
        errors.add(line_no, "feature " + std::to_string(j + 1) + " is not a finite number: '" +
                                f[j + 1] + "'");
        row_ok = false;
        break;
      }
      row[j] = *v;
    }
    if (!row_ok) continue;
    X.ids.push_back(f[0]);
    X.data.insert(X.data.end(), row.begin(), row.end());
  }
  errors.throw_if_any();
  try {
    validate(X);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return X;
}

// ---- classification / cluster label CSVs ----------------------------------------

inline std::string render_types(const std::vector<WorkerRecord>& records) {
  std::string out = "worker_id,type\n";
  for (const WorkerRecord& r : records)
    out += csv_escape(r.worker_id) + "," + std::to_string(type_id(r.type)) + "\n";
  return out;
}

inline std::string render_types(const std::vector<std::pair<std::string, WorkerType>>& types) {
  std::string out = "worker_id,type\n";
  for (const auto& [id, t] : types) out += csv_escape(id) + "," + std::to_string(type_id(t)) + "\n";
  return out;
}

inline std::string render_clusters(const std::vector<std::string>& ids,
                                   const std::vector<int>& labels) {
  std::string out = "worker_id,cluster\n";
  for (std::size_t i = 0; i < ids.size(); ++i)
    out += csv_escape(ids[i]) + "," + std::to_string(labels[i]) + "\n";
  return out;
}

inline std::vector<std::pair<std::string, int>> ingest_clusters(const std::string& path) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  ErrorLog errors(path);
  if (lines.empty() || lines[0] != "worker_id,cluster") {
    errors.add(1, "expected header 'worker_id,cluster'");
    errors.throw_if_any();
  }
  std::vector<std::pair<std::string, int>> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> f = csv_split(lines[i]);
    const auto label = f.size() == 2 ? parse_int(f[1]) : std::nullopt;
    if (f.size() != 2 || f[0].empty() || !label || *label < 0) {
      errors.add(i + 1, "expected 'worker_id,<nonnegative cluster>'");
      continue;
    }
    out.emplace_back(f[0], static_cast<int>(*label));
  }
  errors.throw_if_any();
  return out;
}

// ---- theory report JSON -----------------------------------------------------------

inline std::string render_theory_report(const TheoryReport& report) {
  nlohmann::ordered_json j;
  j["tolerance"] = report.tolerance;
  j["fd_tolerance"] = report.fd_tolerance;
  j["all_pass"] = report.all_pass();
  j["hypotheses"] = nlohmann::ordered_json::array();
  for (const HypothesisResult& r : report.results) {
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["checks"] = r.checks;
    row["passes"] = r.passes;
    row["max_violation"] = r.max_violation;
    row["tolerance"] = r.tolerance;
    row["pass"] = r.pass();
    j["hypotheses"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

// ---- policy comparison report ------------------------------------------------------

struct PolicyReportRow {
  PolicyOutcome outcome;
  std::optional<double> gain_vs_uniform_exante;
  std::optional<double> gain_vs_uniform_expost;
};

inline std::string render_policy_report_csv(const std::vector<PolicyReportRow>& rows) {
  std::string out =
      "policy,n,mean_payoff_cents,mean_type1,mean_type2,mean_type3,mean_type4,"
      "n_type1,n_type2,n_type3,n_type4,gain_vs_uniform_exante_pct,gain_vs_uniform_expost_pct\n";
  for (const auto& row : rows) {
    const PolicyOutcome& o = row.outcome;
    out += o.policy + "," + std::to_string(o.n) + "," + fmt_double(o.mean_payoff);
    for (int t = 0; t < 4; ++t) out += "," + fmt_double(o.per_type_mean[t]);
    for (int t = 0; t < 4; ++t) out += "," + std::to_string(o.per_type_n[t]);
    out += ",";
    if (row.gain_vs_uniform_exante) out += fmt_double(*row.gain_vs_uniform_exante);
    out += ",";
    if (row.gain_vs_uniform_expost) out += fmt_double(*row.gain_vs_uniform_expost);
    out += "\n";
  }
  return out;
}

inline std::string render_policy_report_jsonl(const std::vector<PolicyReportRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    const PolicyOutcome& o = row.outcome;
    j["policy"] = o.policy;
    j["n"] = o.n;
    j["mean_payoff_cents"] = o.mean_payoff;
    for (int t = 0; t < 4; ++t) {
      j["mean_type" + std::to_string(t + 1)] = o.per_type_mean[t];
      j["n_type" + std::to_string(t + 1)] = o.per_type_n[t];
    }
    j["gain_vs_uniform_exante_pct"] =
        row.gain_vs_uniform_exante ? nlohmann::ordered_json(*row.gain_vs_uniform_exante)
                                   : nlohmann::ordered_json(nullptr);
    j["gain_vs_uniform_expost_pct"] =
        row.gain_vs_uniform_expost ? nlohmann::ordered_json(*row.gain_vs_uniform_expost)
                                   : nlohmann::ordered_json(nullptr);
    out += j.dump() + "\n";
  }
  return out;
}

// ---- effect table --------------------------------------------------------------------

inline std::string grouping_label(Grouping g) {
  switch (g) {
    case Grouping::All: return "all";
    case Grouping::ByType: return "by_type";
    case Grouping::ByCluster: return "by_cluster";
  }
  return "all";
}

inline std::string render_effects_csv(const EffectTable& table) {
  std::string out =
      "grouping,subgroup,n_control,n_exante,n_expost,n_choose,control_mean_change,"
      "effect_exante,se_exante,effect_expost,se_expost\n";
  for (const EffectRow& r : table.rows) {
    out += grouping_label(table.grouping) + "," + r.subgroup + "," +
           std::to_string(r.n_control) + "," + std::to_string(r.n_exante) + "," +
           std::to_string(r.n_expost) + "," + std::to_string(r.n_choose) + "," +
           fmt_double(r.control_mean_change) + ",";
    out += r.exante.defined ? fmt_double(r.exante.effect) : "";
    out += ",";
    out += r.exante.defined ? fmt_double(r.exante.se) : "";
    out += ",";
    out += r.expost.defined ? fmt_double(r.expost.effect) : "";
    out += ",";
    out += r.expost.defined ? fmt_double(r.expost.se) : "";
    out += "\n";
  }
  return out;
}

inline std::string render_effects_jsonl(const EffectTable& table) {
  std::string out;
  for (const EffectRow& r : table.rows) {
    nlohmann::ordered_json j;
    j["grouping"] = grouping_label(table.grouping);
    j["subgroup"] = r.subgroup;
    j["n_control"] = r.n_control;
    j["n_exante"] = r.n_exante;
    j["n_expost"] = r.n_expost;
    j["n_choose"] = r.n_choose;
    j["control_mean_change"] = r.control_mean_change;
    j["effect_exante"] =
        r.exante.defined ? nlohmann::ordered_json(r.exante.effect) : nlohmann::ordered_json(nullptr);
    j["se_exante"] =
        r.exante.defined ? nlohmann::ordered_json(r.exante.se) : nlohmann::ordered_json(nullptr);
    j["effect_expost"] =
        r.expost.defined ? nlohmann::ordered_json(r.expost.effect) : nlohmann::ordered_json(nullptr);
    j["se_expost"] =
        r.expost.defined ? nlohmann::ordered_json(r.expost.se) : nlohmann::ordered_json(nullptr);
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace io
}  // namespace peerinfo
