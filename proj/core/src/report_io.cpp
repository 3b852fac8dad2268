#include "skewlab/report_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace skewlab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

Json complex_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

Json to_json(const DiophantineEstimate& est) {
  Json j;
  j["gamma"] = est.gamma;
  j["tau"] = est.tau;
  j["tau_raw"] = est.tau_raw;
  j["scanned_up_to"] = est.scanned_up_to.str();
  j["worst_k"] = est.worst_k.str();
  Json recs = Json::array();
  for (const auto& [k, d] : est.records) recs.push_back({{"k", k.str()}, {"dist", d}});
  j["records"] = recs;
  return j;
}

Json to_json(const LevelVerifyReport& r) {
  Json j;
  j["level"] = r.level;
  j["grid"] = r.grid;
  j["conjugacy_residual"] = r.conjugacy_residual;
  j["sup_norm"] = r.sup_norm;
  j["rms_norm"] = r.rms_norm;
  j["dominant_index"] = r.dominant_index;
  j["expected_alias"] = r.expected_alias;
  j["index_matches"] = r.index_matches;
  j["dominant_magnitude"] = r.dominant_magnitude;
  j["planned_magnitude"] = r.planned_magnitude;
  j["planned_mismatch"] = r.planned_mismatch;
  j["removal_residual_sup"] = r.removal_residual_sup;
  j["removal_residual_rms"] = r.removal_residual_rms;
  j["diagonal_mean"] = r.diagonal_mean;
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["epsilon"] = r.epsilon;
  j["eq2_strictly_decreasing"] = r.eq2_strictly_decreasing;
  j["eq3_all_pass"] = r.eq3_all_pass;
  j["eq6_all_pass"] = r.eq6_all_pass;
  Json rows = Json::array();
  for (const auto& l : r.levels) {
    Json row;
    row["level"] = l.level;
    row["n"] = l.n.str();
    row["tau_adjust"] = l.tau_adjust;
    row["dist_n_alpha"] = l.dist_n_alpha;
    row["dist_n_atop_half"] = l.dist_n_atop_half;
    row["dist_n_alevel_half"] = l.dist_n_alevel_half;
    row["dist_kn_alpha_half"] = l.dist_kn_alpha_half;
    row["sup_f_above"] = l.sup_f_above;
    row["n_times_sup_f"] = l.n_times_sup_f;
    row["eq3_pass"] = l.eq3_pass;
    row["eq6_pass"] = l.eq6_pass;
    rows.push_back(row);
  }
  j["levels"] = rows;
  return j;
}

Json to_json(const ClusterReport& r) {
  Json j;
  j["radius"] = r.radius;
  j["horizon"] = r.horizon;
  j["num_clusters"] = r.clusters.size();
  j["min_separation"] = r.min_separation;
  Json cs = Json::array();
  for (const auto& c : r.clusters) {
    Json e;
    e["center_z"] = complex_json(c.center.z);
    e["center_w"] = complex_json(c.center.w);
    e["count"] = c.count;
    e["max_point_distance"] = c.max_point_distance;
    cs.push_back(e);
  }
  j["clusters"] = cs;
  return j;
}

Json to_json(const ChainErrorReport& r) {
  Json j;
  j["level"] = r.level;
  j["n"] = r.n.str();
  j["delta_exact"] = r.delta_exact;
  j["delta_h"] = r.delta_h;
  j["delta_f"] = r.delta_f;
  j["delta_total"] = r.delta_total;
  j["budget_rhs"] = r.budget_rhs;
  j["budget_holds"] = r.budget_holds;
  j["lip_h_bound"] = r.lip_h_bound;
  j["lip_h_times_dist"] = r.lip_h_times_dist;
  j["atop_pow_dist_half"] = r.atop_pow_dist_half;
  j["atop_pow_so3_id"] = r.atop_pow_so3_id;
  j["atop_away_from_pmid"] = r.atop_away_from_pmid;
  j["alevel_pow_dist_half"] = r.alevel_pow_dist_half;
  return j;
}

Json to_json(const SpreadReport& r) {
  Json j;
  j["checkpoints"] = r.checkpoints;
  j["spread"] = r.spread;
  j["final_spread"] = r.final_spread;
  Json per = Json::array();
  for (const auto& s : r.per_start) per.push_back(s);
  j["per_start"] = per;
  return j;
}

Json to_json(const CoverageReport& r) {
  Json j;
  j["cells_x"] = r.cells_x;
  j["cells_fiber"] = r.cells_fiber;
  j["checkpoints"] = r.checkpoints;
  j["fraction"] = r.fraction;
  j["final_fraction"] = r.final_fraction;
  return j;
}

std::string to_text(const ConditionReport& r) {
  std::ostringstream os;
  os << "condition report (epsilon = " << fmt(r.epsilon) << ")\n";
  os << std::left << std::setw(6) << "level" << std::setw(14) << "n" << std::setw(5) << "tau"
     << std::setw(16) << "|n a|_Z" << std::setw(16) << "|n atop|_Z/2" << std::setw(16)
     << "|k n a|_Z/2" << std::setw(14) << "n|F_above|" << std::setw(5) << "eq3" << std::setw(5)
     << "eq6" << "\n";
  for (const auto& l : r.levels) {
    os << std::left << std::setw(6) << l.level << std::setw(14) << l.n.str() << std::setw(5)
       << l.tau_adjust << std::setw(16) << fmt(l.dist_n_alpha) << std::setw(16)
       << fmt(l.dist_n_atop_half) << std::setw(16) << fmt(l.dist_kn_alpha_half) << std::setw(14)
       << fmt(l.n_times_sup_f) << std::setw(5) << (l.eq3_pass ? "ok" : "FAIL") << std::setw(5)
       << (l.eq6_pass ? "ok" : "FAIL") << "\n";
  }
  os << "eq2 strictly decreasing: " << (r.eq2_strictly_decreasing ? "yes" : "no") << "\n";
  return os.str();
}

std::string to_text(const ClusterReport& r) {
  std::ostringstream os;
  os << "clusters: " << r.clusters.size() << "  horizon: " << r.horizon
     << "  radius: " << fmt(r.radius) << "  min separation: " << fmt(r.min_separation) << "\n";
  for (std::size_t i = 0; i < r.clusters.size(); ++i) {
    const auto& c = r.clusters[i];
    os << "  #" << i << "  count " << std::setw(10) << c.count << "  center z=("
       << fmt(c.center.z.real()) << "," << fmt(c.center.z.imag()) << ") w=("
       << fmt(c.center.w.real()) << "," << fmt(c.center.w.imag()) << ")  max dist "
       << fmt(c.max_point_distance) << "\n";
  }
  return os.str();
}

std::string to_text(const ChainErrorReport& r) {
  std::ostringstream os;
  os << "proof chain, level " << r.level << ", n = " << r.n.str() << "\n"
     << "  delta_exact  " << fmt(r.delta_exact) << "\n"
     << "  delta_H      " << fmt(r.delta_h) << "   (Lip bound " << fmt(r.lip_h_times_dist)
     << ")\n"
     << "  delta_F      " << fmt(r.delta_f) << "\n"
     << "  delta_total  " << fmt(r.delta_total) << "  <=  " << fmt(r.budget_rhs) << "  "
     << (r.budget_holds ? "ok" : "VIOLATED") << "\n"
     << "  |n a_top|_{Z/2} = " << fmt(r.atop_pow_dist_half) << "  dist_so3(A_top^n, +/-Id) = "
     << fmt(r.atop_pow_so3_id) << "  " << (r.atop_away_from_pmid ? "ok" : "FAIL") << "\n"
     << "  |n a_level|_{Z/2} = " << fmt(r.alevel_pow_dist_half) << "\n";
  return os.str();
}

std::string to_text(const LevelVerifyReport& r) {
  std::ostringstream os;
  os << "verify level " << r.level << " (grid " << r.grid << ")\n"
     << "  conjugacy residual   " << fmt(r.conjugacy_residual) << "\n"
     << "  sup |F|              " << fmt(r.sup_norm) << "   rms " << fmt(r.rms_norm) << "\n"
     << "  dominant mode        " << r.dominant_index << " (expected alias "
     << r.expected_alias << ") " << (r.index_matches ? "ok" : "MISMATCH") << "\n"
     << "  |w-hat|              " << fmt(r.dominant_magnitude) << "   planned "
     << fmt(r.planned_magnitude) << "   mismatch " << fmt(r.planned_mismatch) << "\n"
     << "  after mode removal   sup " << fmt(r.removal_residual_sup) << "   rms "
     << fmt(r.removal_residual_rms) << "\n";
  return os.str();
}

std::string to_text(const SpreadReport& r) {
  std::ostringstream os;
  os << "spread over " << r.per_start.size() << " starts\n";
  for (std::size_t c = 0; c < r.checkpoints.size(); ++c)
    os << "  n = " << std::setw(12) << r.checkpoints[c] << "  spread " << fmt(r.spread[c])
       << "\n";
  return os.str();
}

std::string to_text(const CoverageReport& r) {
  std::ostringstream os;
  os << "coverage on " << r.cells_x << " x " << r.cells_fiber << " net\n";
  for (std::size_t c = 0; c < r.checkpoints.size(); ++c)
    os << "  n = " << std::setw(12) << r.checkpoints[c] << "  fraction " << fmt(r.fraction[c])
       << "\n";
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Precondition, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return sha256_hex(ss.str());
}

void Manifest::record(const std::string& path) { entries_[path] = sha256_file(path); }

void Manifest::write(const std::string& manifest_path) const {
  Json j;
  for (const auto& [p, d] : entries_) {
    // store basenames so the manifest is location independent
    auto slash = p.find_last_of('/');
    j[slash == std::string::npos ? p : p.substr(slash + 1)] = d;
  }
  write_file(manifest_path, j.dump(2) + "\n");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Precondition, "cannot write " + path);
  f << content;
}

std::string spec_to_json_text(const CocycleSpec& spec) {
  Json j;
  j["alpha"] = spec.alpha.to_text();
  j["precision_bits"] = spec.precision_bits;
  j["epsilon"] = spec.epsilon;
  j["grid_size"] = spec.grid_size;
  j["top_mode"] = spec.top_mode.kind == TopMode::Kind::Zero ? "zero" : "resonant";
  j["top_magnitude"] = spec.top_mode.magnitude;
  j["k_virtual"] = spec.k_virtual.str();
  j["a_top"] = spec.a_top.to_decimal_string();
  Json levels = Json::array();
  for (const auto& l : spec.levels) {
    Json e;
    e["k"] = l.k.str();
    e["theta"] = l.theta;
    e["phi"] = l.phi;
    e["a"] = l.a.to_decimal_string();
    e["fhat"] = complex_json(l.fhat);
    e["n"] = l.n.str();
    e["tau_adjust"] = l.tau_adjust;
    e["r_next"] = l.r_next;
    levels.push_back(e);
  }
  j["levels"] = levels;
  return j.dump(2) + "\n";
}

CocycleSpec spec_from_json_text(const std::string& text) {
  Json j = Json::parse(text);
  CocycleSpec spec;
  spec.precision_bits = j.at("precision_bits").get<int>();
  spec.alpha = RotationSpec::parse(j.at("alpha").get<std::string>(), spec.precision_bits);
  spec.epsilon = j.at("epsilon").get<double>();
  spec.grid_size = j.at("grid_size").get<int>();
  spec.top_mode.kind = j.at("top_mode").get<std::string>() == "zero" ? TopMode::Kind::Zero
                                                                     : TopMode::Kind::Resonant;
  spec.top_mode.magnitude = j.at("top_magnitude").get<double>();
  spec.k_virtual = from_decimal(j.at("k_virtual").get<std::string>());
  spec.a_top = TorusAngle(from_decimal(j.at("a_top").get<std::string>()), spec.precision_bits);
  for (const auto& e : j.at("levels")) {
    NormalFormLevel l;
    l.k = from_decimal(e.at("k").get<std::string>());
    l.theta = e.at("theta").get<double>();
    l.phi = e.at("phi").get<double>();
    l.a = TorusAngle(from_decimal(e.at("a").get<std::string>()), spec.precision_bits);
    l.fhat = Complex(e.at("fhat")[0].get<double>(), e.at("fhat")[1].get<double>());
    l.n = from_decimal(e.at("n").get<std::string>());
    l.tau_adjust = e.at("tau_adjust").get<int>();
    l.r_next = e.at("r_next").get<double>();
    spec.levels.push_back(std::move(l));
  }
  return spec;
}

}  // namespace skewlab
