#pragma once

#include <openssl/evp.h>

#include <Eigen/Dense>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bwb/barycenter.hpp"
#include "bwb/errors.hpp"
#include "bwb/sym_matrix.hpp"

namespace bwb {

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace detail

/// Hex SHA-256 digest of a file's bytes.
inline std::string sha256_file(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file_bytes(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 digest failed for: " + path.string());
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

/// Writes a matrix as CSV rows at 17 significant digits (lossless for
/// doubles).
inline void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << detail::format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

inline Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw IoError("parse failure in " + path.string() + ": '" + cell + "'");
      }
      if (pos != cell.size()) {
        throw IoError("parse failure in " + path.string() + ": '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("ragged rows in " + path.string());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("empty matrix file: " + path.string());
  if (rows.size() != rows.front().size()) {
    throw IoError("matrix file is not square: " + path.string());
  }
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

struct DatasetManifest {
  int d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  nlohmann::json config;  // generator echo, opaque to the loader
  std::vector<std::string> files;
  std::vector<std::string> sha256;
};

inline constexpr const char* kManifestName = "manifest.json";

/// Writes one CSV file per matrix plus manifest.json with content checksums.
inline DatasetManifest save_dataset(const std::vector<SymMatrix>& matrices,
                                    const std::filesystem::path& dir, std::uint64_t seed = 0,
                                    nlohmann::json config = nlohmann::json::object()) {
  if (matrices.empty()) throw IoError("save_dataset: empty matrix list");
  const int d = matrices.front().dim();
  for (const SymMatrix& m : matrices) {
    if (m.dim() != d) throw ShapeError("save_dataset: mixed dimensions");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory: " + dir.string());

  DatasetManifest manifest;
  manifest.d = d;
  manifest.n = matrices.size();
  manifest.seed = seed;
  manifest.config = std::move(config);
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "mat_%05zu.csv", i);
    write_matrix_csv(dir / name, matrices[i].mat());
    manifest.files.emplace_back(name);
    manifest.sha256.push_back(sha256_file(dir / name));
  }

  nlohmann::json j;
  j["d"] = manifest.d;
  j["n"] = manifest.n;
  j["seed"] = manifest.seed;
  j["config"] = manifest.config;
  j["files"] = manifest.files;
  j["sha256"] = manifest.sha256;
  std::ofstream out(dir / kManifestName);
  if (!out) throw IoError("cannot write manifest in: " + dir.string());
  out << j.dump(2) << '\n';
  return manifest;
}

inline DatasetManifest read_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open manifest: " + manifest_path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("manifest parse failure: " + std::string(e.what()));
  }
  DatasetManifest manifest;
  try {
    manifest.d = j.at("d").get<int>();
    manifest.n = j.at("n").get<std::size_t>();
    manifest.seed = j.at("seed").get<std::uint64_t>();
    manifest.config = j.value("config", nlohmann::json::object());
    manifest.files = j.at("files").get<std::vector<std::string>>();
    manifest.sha256 = j.at("sha256").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("manifest schema failure: " + std::string(e.what()));
  }
  return manifest;
}

/// Loads a dataset back, verifying file count, checksums, dimensions and
/// PSD-ness. The round trip through save_dataset is entrywise exact.
inline SampleSet load_dataset(const std::filesystem::path& manifest_path) {
  const DatasetManifest manifest = read_manifest(manifest_path);
  const std::filesystem::path dir = manifest_path.parent_path();
  if (manifest.files.size() != manifest.n || manifest.sha256.size() != manifest.n) {
    throw IoError("manifest count mismatch: n=" + std::to_string(manifest.n) + " but " +
                  std::to_string(manifest.files.size()) + " files, " +
                  std::to_string(manifest.sha256.size()) + " checksums");
  }
  std::vector<SymMatrix> matrices;
  matrices.reserve(manifest.n);
  for (std::size_t i = 0; i < manifest.n; ++i) {
    const std::filesystem::path path = dir / manifest.files[i];
    const std::string digest = sha256_file(path);
    if (digest != manifest.sha256[i]) {
      throw IoError("checksum mismatch for " + path.string());
    }
    const Eigen::MatrixXd m = read_matrix_csv(path);
    if (m.rows() != manifest.d) {
      throw IoError("dimension mismatch in " + path.string() + ": expected d=" +
                    std::to_string(manifest.d));
    }
    SymMatrix sym = SymMatrix::FromDense(m);
    if (!sym.is_psd()) {
      throw IoError("matrix is not positive semi-definite: " + path.string());
    }
    matrices.push_back(std::move(sym));
  }
  return SampleSet::Create(std::move(matrices));
}

}  // namespace bwb
