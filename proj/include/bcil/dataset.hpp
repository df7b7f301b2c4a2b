#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bcil/bilateral.hpp"

namespace bcil {

// Channel layout of a decimated sequence row: follower block then leader
// block, each [θ0 θ1 θ̇0 θ̇1 τ0 τ1].
constexpr int kRobotChannels = 3 * kDof;
constexpr int kSeqChannels = 2 * kRobotChannels;
constexpr int kFollowerBase = 0;
constexpr int kLeaderBase = kRobotChannels;
constexpr int kDecimation = 20;

struct Sequence {
  double dt = 0.02;
  Eigen::MatrixXd data;  // T × kSeqChannels
  std::string source;
  int phase = 0;

  int length() const { return static_cast<int>(data.rows()); }
};

struct NormStats {
  Eigen::VectorXd min;
  Eigen::VectorXd max;
  std::vector<bool> constant;  // max ≤ min: channel pinned to 0.5

  int channels() const { return static_cast<int>(min.size()); }
};

struct Block {
  int start = 0;
  int len = 0;
};

// Keeps samples phase, phase+20, phase+40, ...; ⌊N/20⌋ rows for every phase,
// so the 20 phases jointly cover the first 20·⌊N/20⌋ raw samples exactly once.
Sequence decimate(const DemoLog& log, int phase);

NormStats fit_norm(const std::vector<Sequence>& corpus);

Sequence normalize(const Sequence& seq, const NormStats& stats);
Sequence denormalize(const Sequence& seq, const NormStats& stats);
Eigen::VectorXd normalize_row(const Eigen::VectorXd& row, const NormStats& stats, int base = 0);
Eigen::VectorXd denormalize_row(const Eigen::VectorXd& row, const NormStats& stats, int base = 0);

// Consecutive blocks of length k tiling [0, len); the final block may be
// shorter. k=1 degenerates to teacher forcing.
std::vector<Block> make_blocks(int len, int k);

void save_normstats(const NormStats& stats, const std::string& path);
NormStats load_normstats(const std::string& path);

// A prepared corpus: decimated + normalized training and validation splits
// plus the statistics that produced them.
struct Dataset {
  std::vector<Sequence> train;
  std::vector<Sequence> val;
  NormStats stats;
};

struct ManifestEntry {
  std::string log_path;
  std::vector<int> phases;
  bool validation = false;
};

// Dataset manifest: one "train"/"val" line per log with its phase list and a
// "normstats" line pointing at the stats file.
void save_dataset_manifest(const std::vector<ManifestEntry>& entries,
                           const std::string& normstats_path, const std::string& path);

// Loads logs, decimates the listed phases, fits stats on the train split
// (reusing the stats file if it exists) and returns the normalized corpus.
Dataset load_dataset(const std::string& manifest_path);

// Builds a dataset in memory from demo logs (used by tests and the prep
// command). Stats are fitted on the train split only.
Dataset build_dataset(const std::vector<DemoLog>& logs, const std::vector<int>& train_phases,
                      const std::vector<int>& val_phases, const std::vector<bool>& is_val_log);

}  // namespace bcil
