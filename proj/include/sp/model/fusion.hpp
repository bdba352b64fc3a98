#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sp/common/text.hpp"
#include "sp/ir/types.hpp"
#include "sp/model/tokens.hpp"

namespace sp::model {

using Tensor3 = std::vector<std::vector<std::vector<double>>>;  // rows x L x d
using Grid = std::vector<std::vector<double>>;                  // rows x L
using MaskGrid = std::vector<std::vector<std::uint8_t>>;        // rows x L

struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Token rows padded to L_max; mask marks real tokens. Greedy packing keeps
// the earliest R_max rows; an [ent] landing on the last slot of a row is
// deferred so it stays glued to the name tokens behind it.
struct SegmentedInput {
  std::vector<std::vector<std::uint32_t>> rows;  // ids, padded with kPadId
  MaskGrid mask;

  std::size_t n_rows() const { return rows.size(); }
};

SegmentedInput segment_input(const std::vector<std::string>& tokens, const HashVocab& vocab,
                             int L_max, int R_max);

struct MultiViewInput {
  SegmentedInput dial;
  SegmentedInput scene;
  int label = 0;  // 0 = pole A, 1 = pole B
};

struct FusionConfig {
  int d = 8;
  int L_max = 16;
  int R_max = 20;
  std::uint32_t vocab_size = 4096;
  double lr = 1e-2;  // retuned for the small built-in encoder
  int epochs = 20;
  int runs = 5;
  int batch = 16;
  bool multiview = true;  // false = dialogue-only ablation
  std::uint64_t seed = 0;
  std::optional<std::size_t> token_budget;  // per-view truncation before packing
};

// Reference learning rate for a pretrained text encoder plug-in; the
// built-in small encoder trains with FusionConfig.lr.
inline constexpr double kPretrainedEncoderLr = 2e-5;

struct FusionParams {
  int d = 0;
  int L_max = 0;
  std::uint32_t vocab_size = 0;
  Matrix E;                    // vocab x d token embeddings
  Matrix P;                    // L_max x d position embeddings
  Matrix W1, U1;               // d x d row mixing
  std::vector<double> b1;      // d
  std::vector<double> w_dial;  // d attention head, dialogue view
  double b_dial = 0.0;
  std::vector<double> w_scene;  // d attention head, scene view
  double b_scene = 0.0;
  Matrix Wc;               // 2 x 2d classification head over [h_dial; h_scene]
  std::vector<double> bc;  // 2

  bool initialized() const { return d > 0; }
};

FusionParams init_params(const FusionConfig& config, text::Rng& rng);

// Attention snapshot of one view, in the shape the invariants quantify over.
struct FusionState {
  Tensor3 H;
  Grid attn_logits;
  Grid alpha;                 // 0 at masked positions, sums to 1 elsewhere
  std::vector<double> h_view; // sum of alpha-weighted hidden states
  MaskGrid mask;              // eligibility, not raw validity
};

// Joint softmax over every eligible (row, token) position; order-invariant
// summation keeps alpha and h_view bitwise stable under row permutation.
// Throws AllMasked when no position is eligible.
FusionState fuse_attention(const Tensor3& H, const std::vector<double>& w, double b,
                           const MaskGrid& eligible);

// Encoder work counter (multiply-accumulate style op tally); row cost depends
// only on the row's token count, giving linear growth in the number of rows.
std::uint64_t encoder_ops();
void reset_encoder_ops();

struct ViewCache {
  Tensor3 x;                           // embedded inputs
  Tensor3 h;                           // encoded states
  std::vector<std::vector<double>> m;  // per-row mean of unmasked x
  std::vector<std::size_t> n_tokens;   // unmasked count per row
  MaskGrid eligible;                   // attention-eligible positions
  Grid alpha;                          // all zeros when nothing is eligible
  std::vector<double> h_view;          // zero vector when nothing is eligible
  bool any_eligible = false;
};

struct ForwardCache {
  ViewCache dial, scene;
  std::array<double, 2> logits{};
  std::array<double, 2> prob{};
  double loss = 0.0;
};

// Shared encoder over both views, per-view attention heads, scene attention
// restricted to [ent] positions, concatenated summaries into the linear head.
// An empty view contributes a zero summary. multiview=false skips the scene
// view entirely.
ForwardCache multiview_forward(const MultiViewInput& input, const FusionParams& params,
                               bool multiview = true);

struct FusionGradients {
  Matrix E, P, W1, U1;
  std::vector<double> b1;
  std::vector<double> w_dial;
  double b_dial = 0.0;
  std::vector<double> w_scene;
  double b_scene = 0.0;
  Matrix Wc;
  std::vector<double> bc;
};

FusionGradients zero_gradients(const FusionParams& params);

// Accumulates d(loss)/d(params) for one example into grads.
void multiview_backward(const MultiViewInput& input, const FusionParams& params,
                        const ForwardCache& cache, FusionGradients& grads,
                        bool multiview = true);

MultiViewInput make_input(const ir::CharacterRecord& record, const ir::Dimension& dimension,
                          const HashVocab& vocab, const FusionConfig& config);

// Argmax over the two pole logits.
std::string predict_fusion(const FusionParams& params, const ir::CharacterRecord& record,
                           const ir::Dimension& dimension, const FusionConfig& config);

struct RunMetrics {
  int run = 0;
  std::uint64_t seed = 0;
  double best_dev_f1 = 0.0;
  int best_epoch = 0;
  double final_train_f1 = 0.0;
  std::vector<double> epoch_dev_f1;
};

struct FusionRunResult {
  FusionParams params;  // best-dev epoch snapshot
  RunMetrics metrics;
};

struct FusionTrainResult {
  std::vector<FusionRunResult> runs;
  double mean_dev_f1 = 0.0;
  double std_dev_f1 = 0.0;  // population std across runs
};

// Adam + cross entropy; run r uses seed + r; model selection by dev macro-F1.
// Throws DegenerateTrainingSet when a pole is absent from train.
FusionTrainResult train_fusion(const std::vector<ir::CharacterRecord>& train,
                               const std::vector<ir::CharacterRecord>& dev,
                               const ir::Dimension& dimension, const FusionConfig& config);

void save_fusion(const FusionParams& params, const std::filesystem::path& path);
FusionParams load_fusion(const std::filesystem::path& path);

}  // namespace sp::model
