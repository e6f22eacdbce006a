#include "qet/reference.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qet {

std::string to_string(ReferenceSource s) {
  return s == ReferenceSource::Simulator ? "simulator" : "device";
}

std::optional<ReferenceEntry> ReferenceDataset::find(
    int num_qubits, double h, double k, const std::string& quantity,
    ReferenceSource source) const {
  for (const auto& e : entries) {
    if (e.num_qubits == num_qubits && e.h == h && e.k == k &&
        e.quantity == quantity && e.source == source) {
      return e;
    }
  }
  return std::nullopt;
}

namespace {

ReferenceDataset make_builtin() {
  // Published energy readings for the 3/4/5-qubit runs: noiseless-simulator
  // and IBMQ Lagos columns, (h,k) in {(2,1),(1,1)}.
  ReferenceDataset d;
  auto row = [&](int n, double h, double k, const char* q, double sim,
                 double sim_err, double dev, double dev_err) {
    d.entries.push_back(
        {n, h, k, q, ReferenceSource::Simulator, sim, sim_err});
    d.entries.push_back({n, h, k, q, ReferenceSource::Device, dev, dev_err});
  };

  // N = 3
  row(3, 2, 1, "H_tot", 1.7845, 0.0063, 1.8627, 0.0063);
  row(3, 1, 1, "H_tot", 0.7064, 0.0031, 0.7321, 0.0031);
  row(3, 2, 1, "H_sub_1", 0.7314, 0.0053, 0.9611, 0.0057);
  row(3, 1, 1, "H_sub_1", 0.1809, 0.0026, 0.2206, 0.0028);
  row(3, 2, 1, "H_sub_2", 0.3918, 0.0045, 0.4675, 0.0058);
  row(3, 1, 1, "H_sub_2", 0.0107, 0.0022, 0.0122, 0.0028);
  row(3, 2, 1, "E_o", 1.7888, 0.0, 1.7888, 0.0);
  row(3, 1, 1, "E_o", 0.7071, 0.0, 0.7071, 0.0);
  row(3, 2, 1, "H_1", 1.0531, 0.0, 0.9016, 0.0);
  row(3, 1, 1, "H_1", 0.5255, 0.0, 0.5115, 0.0);
  row(3, 2, 1, "H_2", 0.3396, 0.0, 0.4936, 0.0);
  row(3, 1, 1, "H_2", 0.1702, 0.0, 0.2084, 0.0);

  // N = 4
  row(4, 2, 1, "H_tot", 1.7846, 0.0063, 1.9186, 0.0063);
  row(4, 1, 1, "H_tot", 0.7009, 0.0031, 0.7915, 0.0031);
  row(4, 2, 1, "H_sub_1", 1.1575, 0.0060, 1.4426, 0.0062);
  row(4, 1, 1, "H_sub_1", 0.3895, 0.0029, 0.4582, 0.0031);
  row(4, 2, 1, "H_sub_2", 0.9156, 0.0056, 1.0287, 0.0061);
  row(4, 1, 1, "H_sub_2", 0.2644, 0.0028, 0.2970, 0.0030);
  row(4, 2, 1, "H_sub_3", 0.6624, 0.0052, 0.7885, 0.0060);
  row(4, 1, 1, "H_sub_3", 0.1485, 0.0026, 0.1987, 0.0031);
  row(4, 2, 1, "E_o", 1.7888, 0.0, 1.7888, 0.0);
  row(4, 1, 1, "E_o", 0.7071, 0.0, 0.7071, 0.0);
  row(4, 2, 1, "H_1", 0.6271, 0.0, 0.476, 0.0);
  row(4, 1, 1, "H_1", 0.3114, 0.0, 0.3333, 0.0);
  row(4, 2, 1, "H_2", 0.2419, 0.0, 0.4139, 0.0);
  row(4, 1, 1, "H_2", 0.1251, 0.0, 0.1612, 0.0);
  row(4, 2, 1, "H_3", 0.2532, 0.0, 0.2402, 0.0);
  row(4, 1, 1, "H_3", 0.1157, 0.0, 0.0983, 0.0);

  // N = 5
  row(5, 2, 1, "H_tot", 1.7830, 0.0063, 1.9488, 0.0063);
  row(5, 1, 1, "H_tot", 0.7079, 0.0031, 0.7902, 0.0031);
  row(5, 2, 1, "H_sub_1", 1.4128, 0.0062, 1.77989, 0.0063);
  row(5, 1, 1, "H_sub_1", 0.5210, 0.0031, 0.6148, 0.0031);
  row(5, 2, 1, "H_sub_2", 1.2120, 0.0060, 1.4866, 0.0063);
  row(5, 1, 1, "H_sub_2", 0.4125, 0.0030, 0.4987, 0.0031);
  row(5, 2, 1, "H_sub_3", 1.0266, 0.0058, 1.2777, 0.0063);
  row(5, 1, 1, "H_sub_3", 0.3243, 0.0029, 0.4054, 0.0031);
  row(5, 2, 1, "H_sub_4", 0.8325, 0.0055, 1.0973, 0.0063);
  row(5, 1, 1, "H_sub_4", 0.2303, 0.0027, 0.3325, 0.0031);
  row(5, 2, 1, "E_o", 1.7888, 0.0, 1.7888, 0.0);
  row(5, 1, 1, "E_o", 0.7071, 0.0, 0.7071, 0.0);
  row(5, 2, 1, "H_1", 0.3702, 0.0, 0.169, 0.0);
  row(5, 1, 1, "H_1", 0.1869, 0.0, 0.1754, 0.0);
  row(5, 2, 1, "H_2", 0.2008, 0.0, 0.2932, 0.0);
  row(5, 1, 1, "H_2", 0.1085, 0.0, 0.1161, 0.0);
  row(5, 2, 1, "H_3", 0.1854, 0.0, 0.2089, 0.0);
  row(5, 1, 1, "H_3", 0.0882, 0.0, 0.0933, 0.0);
  row(5, 2, 1, "H_4", 0.1941, 0.0, 0.1797, 0.0);
  row(5, 1, 1, "H_4", 0.094, 0.0, 0.0729, 0.0);
  return d;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const ReferenceDataset& builtin_reference() {
  static const ReferenceDataset dataset = make_builtin();
  return dataset;
}

std::string canonical_reference_text(const ReferenceDataset& dataset) {
  std::string out;
  for (const auto& e : dataset.entries) {
    out += std::to_string(e.num_qubits) + "," + fmt(e.h) + "," + fmt(e.k) +
           "," + e.quantity + "," + to_string(e.source) + "," + fmt(e.value) +
           "," + fmt(e.stderr_) + "\n";
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ReferenceDataset load_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file: " + path);
  ReferenceDataset d;
  std::string line;
  std::uint64_t declared_checksum = 0;
  bool have_checksum = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# checksum ", 0) == 0) {
      declared_checksum = std::stoull(line.substr(11), nullptr, 16);
      have_checksum = true;
      continue;
    }
    if (line[0] == '#') continue;
    std::stringstream ss(line);
    std::string field;
    ReferenceEntry e;
    std::getline(ss, field, ',');
    e.num_qubits = std::stoi(field);
    std::getline(ss, field, ',');
    e.h = std::stod(field);
    std::getline(ss, field, ',');
    e.k = std::stod(field);
    std::getline(ss, e.quantity, ',');
    std::getline(ss, field, ',');
    e.source = field == "simulator" ? ReferenceSource::Simulator
                                    : ReferenceSource::Device;
    std::getline(ss, field, ',');
    e.value = std::stod(field);
    std::getline(ss, field, ',');
    e.stderr_ = std::stod(field);
    d.entries.push_back(e);
  }
  if (!have_checksum) {
    throw std::runtime_error("reference file has no checksum line");
  }
  const std::uint64_t actual = fnv1a64(canonical_reference_text(d));
  if (actual != declared_checksum) {
    throw std::runtime_error("reference file checksum mismatch");
  }
  return d;
}

std::vector<DeviationRow> compare_reference(const EnergyLedger& ledger,
                                            const ProtocolConfig& config,
                                            const ReferenceDataset& dataset,
                                            ReferenceSource source) {
  const int n = config.params.num_qubits;
  const double h = config.params.h;
  const double k = config.params.k;

  std::vector<DeviationRow> rows;
  auto add = [&](const std::string& quantity, double value, double stderr_) {
    const auto ref = dataset.find(n, h, k, quantity, source);
    if (!ref) {
      throw std::runtime_error("missing reference row: " + quantity);
    }
    DeviationRow row;
    row.quantity = quantity;
    row.artifact = value;
    row.artifact_stderr = stderr_;
    row.reference = ref->value;
    row.reference_stderr = ref->stderr_;
    row.deviation = std::abs(value - ref->value);
    const double combined =
        std::sqrt(stderr_ * stderr_ + ref->stderr_ * ref->stderr_);
    row.stderr_ratio = combined > 0.0 ? row.deviation / combined : 0.0;
    row.reconstruction_gap = combined > 0.0 ? row.stderr_ratio > 5.0
                                            : row.deviation > 5e-4;
    rows.push_back(row);
  };

  add("E_o", ledger.e0, 0.0);
  add("H_tot", ledger.h_total_post.mean, ledger.h_total_post.stderr_);
  for (int m = 1; m < n; ++m) {
    const auto& est = ledger.h_sub[static_cast<std::size_t>(m - 1)];
    add("H_sub_" + std::to_string(m), est.mean, est.stderr_);
  }
  for (int q = 1; q < n; ++q) {
    const auto& est = ledger.harvested[static_cast<std::size_t>(q - 1)];
    add("H_" + std::to_string(q), est.mean, est.stderr_);
  }
  return rows;
}

}  // namespace qet
