#include "sp/model/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "sp/common/error.hpp"
#include "sp/eval/metrics.hpp"

namespace sp::model {

namespace {

thread_local std::uint64_t g_encoder_ops = 0;

double uniform_pm(text::Rng& rng, double scale) { return (rng.uniform01() * 2.0 - 1.0) * scale; }

void fill_uniform(Matrix& m, text::Rng& rng, double scale) {
  for (auto& v : m.a) v = uniform_pm(rng, scale);
}

void fill_uniform(std::vector<double>& v, text::Rng& rng, double scale) {
  for (auto& x : v) x = uniform_pm(rng, scale);
}

// x_ij = E[t_ij] + P[j]; m_i = row mean of x; h_ij = tanh(W1 x_ij + U1 m_i + b1).
// Rows are independent, so the cost is a per-row function of the token count.
void encode_view(const SegmentedInput& input, const FusionParams& p, ViewCache& vc) {
  const std::size_t R = input.n_rows();
  const std::size_t L = static_cast<std::size_t>(p.L_max);
  const std::size_t d = static_cast<std::size_t>(p.d);
  vc.x.assign(R, std::vector<std::vector<double>>(L, std::vector<double>(d, 0.0)));
  vc.h.assign(R, std::vector<std::vector<double>>(L, std::vector<double>(d, 0.0)));
  vc.m.assign(R, std::vector<double>(d, 0.0));
  vc.n_tokens.assign(R, 0);

  for (std::size_t r = 0; r < R; ++r) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < L; ++j) {
      if (!input.mask[r][j]) continue;
      ++n;
      const std::uint32_t id = input.rows[r][j];
      for (std::size_t k = 0; k < d; ++k) {
        vc.x[r][j][k] = p.E.at(id, k) + p.P.at(j, k);
        vc.m[r][k] += vc.x[r][j][k];
      }
    }
    vc.n_tokens[r] = n;
    if (n == 0) continue;
    for (std::size_t k = 0; k < d; ++k) vc.m[r][k] /= static_cast<double>(n);
    for (std::size_t j = 0; j < L; ++j) {
      if (!input.mask[r][j]) continue;
      for (std::size_t k = 0; k < d; ++k) {
        double a = p.b1[k];
        for (std::size_t q = 0; q < d; ++q)
          a += p.W1.at(k, q) * vc.x[r][j][q] + p.U1.at(k, q) * vc.m[r][q];
        vc.h[r][j][k] = std::tanh(a);
      }
    }
    // embed + mean + mix + tanh, tallied from the loop trip counts above
    g_encoder_ops += n * d + (n * d + d) + n * (2 * d * d + d) + n * d;
  }
}

void fuse_view(const SegmentedInput& input, const FusionParams& p, ViewCache& vc,
               const std::vector<double>& w, double b, bool ent_only) {
  const std::size_t R = input.n_rows();
  const std::size_t L = static_cast<std::size_t>(p.L_max);
  const std::size_t d = static_cast<std::size_t>(p.d);
  vc.eligible.assign(R, std::vector<std::uint8_t>(L, 0));
  vc.any_eligible = false;
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t j = 0; j < L; ++j) {
      bool ok = input.mask[r][j] && (!ent_only || input.rows[r][j] == kEntId);
      vc.eligible[r][j] = ok ? 1 : 0;
      vc.any_eligible = vc.any_eligible || ok;
    }
  }
  if (!vc.any_eligible) {
    vc.alpha.assign(R, std::vector<double>(L, 0.0));
    vc.h_view.assign(d, 0.0);
    return;
  }
  FusionState state = fuse_attention(vc.h, w, b, vc.eligible);
  vc.alpha = std::move(state.alpha);
  vc.h_view = std::move(state.h_view);
}

// Attention + softmax + encoder backward for one view. dh_view is
// d(loss)/d(h_view); shared encoder gradients accumulate across views.
void view_backward(const SegmentedInput& input, const FusionParams& p, const ViewCache& vc,
                   const std::vector<double>& w, std::vector<double>& dw, double& db,
                   const std::vector<double>& dh_view, FusionGradients& g) {
  if (!vc.any_eligible) return;
  const std::size_t R = input.n_rows();
  const std::size_t L = static_cast<std::size_t>(p.L_max);
  const std::size_t d = static_cast<std::size_t>(p.d);

  Grid dh(R, std::vector<double>(L * d, 0.0));  // flattened per row
  Grid dalpha(R, std::vector<double>(L, 0.0));
  std::vector<double> s_terms;
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t j = 0; j < L; ++j) {
      if (!vc.eligible[r][j]) continue;
      double da = 0.0;
      for (std::size_t k = 0; k < d; ++k) da += dh_view[k] * vc.h[r][j][k];
      dalpha[r][j] = da;
      s_terms.push_back(vc.alpha[r][j] * da);
    }
  const double s = text::stable_sum(std::move(s_terms));

  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t j = 0; j < L; ++j) {
      if (!vc.eligible[r][j]) continue;
      double dl = vc.alpha[r][j] * (dalpha[r][j] - s);
      db += dl;
      for (std::size_t k = 0; k < d; ++k) {
        dw[k] += dl * vc.h[r][j][k];
        dh[r][j * d + k] = vc.alpha[r][j] * dh_view[k] + dl * w[k];
      }
    }

  std::vector<double> da(d), dm(d), dx(d);
  for (std::size_t r = 0; r < R; ++r) {
    if (vc.n_tokens[r] == 0) continue;
    std::fill(dm.begin(), dm.end(), 0.0);
    Grid dx_row(L, std::vector<double>(d, 0.0));
    for (std::size_t j = 0; j < L; ++j) {
      if (!input.mask[r][j]) continue;
      bool live = false;
      for (std::size_t k = 0; k < d; ++k)
        if (dh[r][j * d + k] != 0.0) live = true;
      if (!live) continue;
      for (std::size_t k = 0; k < d; ++k) {
        double hk = vc.h[r][j][k];
        da[k] = dh[r][j * d + k] * (1.0 - hk * hk);
      }
      for (std::size_t k = 0; k < d; ++k) {
        g.b1[k] += da[k];
        for (std::size_t q = 0; q < d; ++q) {
          g.W1.at(k, q) += da[k] * vc.x[r][j][q];
          g.U1.at(k, q) += da[k] * vc.m[r][q];
          dx_row[j][q] += p.W1.at(k, q) * da[k];
          dm[q] += p.U1.at(k, q) * da[k];
        }
      }
    }
    const double inv_n = 1.0 / static_cast<double>(vc.n_tokens[r]);
    for (std::size_t j = 0; j < L; ++j) {
      if (!input.mask[r][j]) continue;
      const std::uint32_t id = input.rows[r][j];
      for (std::size_t k = 0; k < d; ++k) {
        double v = dx_row[j][k] + dm[k] * inv_n;
        g.E.at(id, k) += v;
        g.P.at(j, k) += v;
      }
    }
  }
}

}  // namespace

SegmentedInput segment_input(const std::vector<std::string>& tokens, const HashVocab& vocab,
                             int L_max, int R_max) {
  if (L_max < 1 || R_max < 1) throw_config("BadSegmentShape", "L_max and R_max must be >= 1");
  SegmentedInput out;
  std::vector<std::uint32_t> row;
  row.reserve(static_cast<std::size_t>(L_max));
  auto flush = [&]() {
    if (static_cast<int>(out.rows.size()) >= R_max) {
      row.clear();
      return;
    }
    std::vector<std::uint32_t> ids(static_cast<std::size_t>(L_max), kPadId);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(L_max), 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      ids[j] = row[j];
      mask[j] = 1;
    }
    out.rows.push_back(std::move(ids));
    out.mask.push_back(std::move(mask));
    row.clear();
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (static_cast<int>(out.rows.size()) >= R_max) break;
    bool is_ent = tokens[i] == kEntToken;
    // Keep the marker on the same row as the name tokens that follow it.
    if (is_ent && L_max > 1 && static_cast<int>(row.size()) == L_max - 1 &&
        i + 1 < tokens.size())
      flush();
    if (static_cast<int>(out.rows.size()) >= R_max) break;
    row.push_back(vocab.id_of(tokens[i]));
    if (static_cast<int>(row.size()) == L_max) flush();
  }
  if (!row.empty()) flush();
  if (out.rows.empty()) {
    row.clear();
    flush();  // one fully masked row
  }
  return out;
}

FusionParams init_params(const FusionConfig& config, text::Rng& rng) {
  FusionParams p;
  p.d = config.d;
  p.L_max = config.L_max;
  p.vocab_size = config.vocab_size;
  const auto d = static_cast<std::size_t>(config.d);
  p.E = Matrix(config.vocab_size, d);
  p.P = Matrix(static_cast<std::size_t>(config.L_max), d);
  p.W1 = Matrix(d, d);
  p.U1 = Matrix(d, d);
  p.b1.assign(d, 0.0);
  p.w_dial.assign(d, 0.0);
  p.w_scene.assign(d, 0.0);
  p.Wc = Matrix(2, 2 * d);
  p.bc.assign(2, 0.0);

  const double mix_scale = 0.5 / std::sqrt(static_cast<double>(d));
  fill_uniform(p.E, rng, 0.1);
  fill_uniform(p.P, rng, 0.1);
  fill_uniform(p.W1, rng, mix_scale);
  fill_uniform(p.U1, rng, mix_scale);
  fill_uniform(p.w_dial, rng, 0.1);
  fill_uniform(p.w_scene, rng, 0.1);
  fill_uniform(p.Wc, rng, 0.1);
  return p;
}

FusionState fuse_attention(const Tensor3& H, const std::vector<double>& w, double b,
                           const MaskGrid& eligible) {
  const std::size_t R = H.size();
  const std::size_t d = w.size();
  FusionState state;
  state.H = H;
  state.mask = eligible;

  std::vector<std::pair<std::size_t, std::size_t>> live;
  state.attn_logits.assign(R, {});
  for (std::size_t r = 0; r < R; ++r) {
    const std::size_t L = H[r].size();
    state.attn_logits[r].assign(L, 0.0);
    for (std::size_t j = 0; j < L; ++j) {
      double l = b;
      for (std::size_t k = 0; k < d; ++k) l += w[k] * H[r][j][k];
      state.attn_logits[r][j] = l;
      if (r < eligible.size() && j < eligible[r].size() && eligible[r][j]) live.emplace_back(r, j);
    }
  }
  if (live.empty()) throw_data("AllMasked", "attention requires at least one eligible position");

  double max_logit = state.attn_logits[live[0].first][live[0].second];
  for (const auto& [r, j] : live) max_logit = std::max(max_logit, state.attn_logits[r][j]);

  std::vector<double> terms;
  terms.reserve(live.size());
  for (const auto& [r, j] : live)
    terms.push_back(std::exp(state.attn_logits[r][j] - max_logit));
  const double denom = text::stable_sum(terms);

  state.alpha.assign(R, {});
  for (std::size_t r = 0; r < R; ++r) state.alpha[r].assign(H[r].size(), 0.0);
  for (std::size_t i = 0; i < live.size(); ++i)
    state.alpha[live[i].first][live[i].second] = terms[i] / denom;

  state.h_view.assign(d, 0.0);
  std::vector<double> coord_terms(live.size());
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < live.size(); ++i) {
      const auto& [r, j] = live[i];
      coord_terms[i] = state.alpha[r][j] * H[r][j][k];
    }
    state.h_view[k] = text::stable_sum(coord_terms);
  }
  return state;
}

std::uint64_t encoder_ops() { return g_encoder_ops; }
void reset_encoder_ops() { g_encoder_ops = 0; }

ForwardCache multiview_forward(const MultiViewInput& input, const FusionParams& params,
                               bool multiview) {
  if (!params.initialized()) throw_training("UntrainedModel", "forward needs parameters");
  const std::size_t d = static_cast<std::size_t>(params.d);
  ForwardCache cache;

  encode_view(input.dial, params, cache.dial);
  fuse_view(input.dial, params, cache.dial, params.w_dial, params.b_dial, false);
  if (multiview) {
    encode_view(input.scene, params, cache.scene);
    fuse_view(input.scene, params, cache.scene, params.w_scene, params.b_scene, true);
  } else {
    cache.scene.h_view.assign(d, 0.0);
    cache.scene.any_eligible = false;
  }

  for (int c = 0; c < 2; ++c) {
    double z = params.bc[static_cast<std::size_t>(c)];
    for (std::size_t k = 0; k < d; ++k)
      z += params.Wc.at(static_cast<std::size_t>(c), k) * cache.dial.h_view[k] +
           params.Wc.at(static_cast<std::size_t>(c), d + k) * cache.scene.h_view[k];
    cache.logits[static_cast<std::size_t>(c)] = z;
  }
  const double mz = std::max(cache.logits[0], cache.logits[1]);
  const double e0 = std::exp(cache.logits[0] - mz);
  const double e1 = std::exp(cache.logits[1] - mz);
  cache.prob[0] = e0 / (e0 + e1);
  cache.prob[1] = e1 / (e0 + e1);
  const double p_label = cache.prob[static_cast<std::size_t>(input.label)];
  cache.loss = -std::log(std::max(p_label, 1e-300));
  return cache;
}

FusionGradients zero_gradients(const FusionParams& params) {
  FusionGradients g;
  g.E = Matrix(params.E.rows, params.E.cols);
  g.P = Matrix(params.P.rows, params.P.cols);
  g.W1 = Matrix(params.W1.rows, params.W1.cols);
  g.U1 = Matrix(params.U1.rows, params.U1.cols);
  g.b1.assign(params.b1.size(), 0.0);
  g.w_dial.assign(params.w_dial.size(), 0.0);
  g.w_scene.assign(params.w_scene.size(), 0.0);
  g.Wc = Matrix(params.Wc.rows, params.Wc.cols);
  g.bc.assign(params.bc.size(), 0.0);
  return g;
}

void multiview_backward(const MultiViewInput& input, const FusionParams& params,
                        const ForwardCache& cache, FusionGradients& grads, bool multiview) {
  const std::size_t d = static_cast<std::size_t>(params.d);
  std::array<double, 2> dz = cache.prob;
  dz[static_cast<std::size_t>(input.label)] -= 1.0;

  std::vector<double> dh_dial(d, 0.0), dh_scene(d, 0.0);
  for (std::size_t c = 0; c < 2; ++c) {
    grads.bc[c] += dz[c];
    for (std::size_t k = 0; k < d; ++k) {
      grads.Wc.at(c, k) += dz[c] * cache.dial.h_view[k];
      grads.Wc.at(c, d + k) += dz[c] * cache.scene.h_view[k];
      dh_dial[k] += params.Wc.at(c, k) * dz[c];
      dh_scene[k] += params.Wc.at(c, d + k) * dz[c];
    }
  }

  view_backward(input.dial, params, cache.dial, params.w_dial, grads.w_dial, grads.b_dial,
                dh_dial, grads);
  if (multiview)
    view_backward(input.scene, params, cache.scene, params.w_scene, grads.w_scene,
                  grads.b_scene, dh_scene, grads);
}

MultiViewInput make_input(const ir::CharacterRecord& record, const ir::Dimension& dimension,
                          const HashVocab& vocab, const FusionConfig& config) {
  MultiViewInput input;
  auto dial = dialogue_tokens(record);
  auto scene = scene_tokens(record);
  if (config.token_budget) {
    dial = truncate_tokens(std::move(dial), *config.token_budget);
    scene = truncate_tokens(std::move(scene), *config.token_budget);
  }
  input.dial = segment_input(dial, vocab, config.L_max, config.R_max);
  input.scene = segment_input(scene, vocab, config.L_max, config.R_max);
  const auto* vote = record.profile.find_vote(dimension.id);
  input.label = (vote && vote->winner == dimension.pole_b_str()) ? 1 : 0;
  return input;
}

std::string predict_fusion(const FusionParams& params, const ir::CharacterRecord& record,
                           const ir::Dimension& dimension, const FusionConfig& config) {
  HashVocab vocab{params.vocab_size};
  FusionConfig shaped = config;
  shaped.d = params.d;
  shaped.L_max = params.L_max;
  MultiViewInput input = make_input(record, dimension, vocab, shaped);
  ForwardCache cache = multiview_forward(input, params, config.multiview);
  return cache.logits[0] >= cache.logits[1] ? dimension.pole_a_str() : dimension.pole_b_str();
}

namespace {

struct AdamState {
  std::vector<double> m, v;
  int t = 0;
};

std::vector<double*> param_ptrs(FusionParams& p) {
  std::vector<double*> out;
  auto add_mat = [&](Matrix& m) {
    for (auto& x : m.a) out.push_back(&x);
  };
  auto add_vec = [&](std::vector<double>& v) {
    for (auto& x : v) out.push_back(&x);
  };
  add_mat(p.E);
  add_mat(p.P);
  add_mat(p.W1);
  add_mat(p.U1);
  add_vec(p.b1);
  add_vec(p.w_dial);
  out.push_back(&p.b_dial);
  add_vec(p.w_scene);
  out.push_back(&p.b_scene);
  add_mat(p.Wc);
  add_vec(p.bc);
  return out;
}

std::vector<double*> grad_ptrs(FusionGradients& g) {
  std::vector<double*> out;
  auto add_mat = [&](Matrix& m) {
    for (auto& x : m.a) out.push_back(&x);
  };
  auto add_vec = [&](std::vector<double>& v) {
    for (auto& x : v) out.push_back(&x);
  };
  add_mat(g.E);
  add_mat(g.P);
  add_mat(g.W1);
  add_mat(g.U1);
  add_vec(g.b1);
  add_vec(g.w_dial);
  out.push_back(&g.b_dial);
  add_vec(g.w_scene);
  out.push_back(&g.b_scene);
  add_mat(g.Wc);
  add_vec(g.bc);
  return out;
}

void adam_step(std::vector<double*>& params, const std::vector<double*>& grads, AdamState& st,
               double lr) {
  constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  if (st.m.empty()) {
    st.m.assign(params.size(), 0.0);
    st.v.assign(params.size(), 0.0);
  }
  ++st.t;
  const double c1 = 1.0 - std::pow(b1, st.t);
  const double c2 = 1.0 - std::pow(b2, st.t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = *grads[i];
    st.m[i] = b1 * st.m[i] + (1.0 - b1) * g;
    st.v[i] = b2 * st.v[i] + (1.0 - b2) * g * g;
    *params[i] -= lr * (st.m[i] / c1) / (std::sqrt(st.v[i] / c2) + eps);
  }
}

double f1_on(const std::vector<MultiViewInput>& inputs, const FusionParams& params,
             const ir::Dimension& dim, bool multiview) {
  if (inputs.empty()) return 0.0;
  std::vector<std::string> gold, pred;
  for (const auto& input : inputs) {
    gold.push_back(input.label == 0 ? dim.pole_a_str() : dim.pole_b_str());
    ForwardCache cache = multiview_forward(input, params, multiview);
    pred.push_back(cache.logits[0] >= cache.logits[1] ? dim.pole_a_str() : dim.pole_b_str());
  }
  return eval::macro_f1(gold, pred);
}

}  // namespace

FusionTrainResult train_fusion(const std::vector<ir::CharacterRecord>& train,
                               const std::vector<ir::CharacterRecord>& dev,
                               const ir::Dimension& dimension, const FusionConfig& config) {
  HashVocab vocab{config.vocab_size};
  std::vector<MultiViewInput> train_inputs, dev_inputs;
  std::size_t n_a = 0, n_b = 0;
  for (const auto& record : train) {
    if (!record.profile.find_vote(dimension.id)) continue;
    train_inputs.push_back(make_input(record, dimension, vocab, config));
    (train_inputs.back().label == 0 ? n_a : n_b) += 1;
  }
  if (n_a < 1 || n_b < 1)
    throw_training("DegenerateTrainingSet", dimension.id + ": need both poles, got " +
                                                std::to_string(n_a) + "/" + std::to_string(n_b));
  for (const auto& record : dev) {
    if (!record.profile.find_vote(dimension.id)) continue;
    dev_inputs.push_back(make_input(record, dimension, vocab, config));
  }

  FusionTrainResult result;
  std::vector<double> run_scores;
  for (int run = 0; run < config.runs; ++run) {
    const std::uint64_t run_seed = config.seed + static_cast<std::uint64_t>(run);
    text::Rng rng(run_seed);
    FusionParams params = init_params(config, rng);
    auto pptrs = param_ptrs(params);
    AdamState adam;

    FusionRunResult run_result;
    run_result.metrics.run = run;
    run_result.metrics.seed = run_seed;
    double best = -1.0;

    std::vector<std::size_t> order(train_inputs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
      text::shuffle(order, rng);
      std::size_t pos = 0;
      while (pos < order.size()) {
        const std::size_t end = std::min(pos + static_cast<std::size_t>(config.batch),
                                         order.size());
        FusionGradients grads = zero_gradients(params);
        for (std::size_t i = pos; i < end; ++i) {
          const auto& input = train_inputs[order[i]];
          ForwardCache cache = multiview_forward(input, params, config.multiview);
          multiview_backward(input, params, cache, grads, config.multiview);
        }
        const double inv = 1.0 / static_cast<double>(end - pos);
        auto gptrs = grad_ptrs(grads);
        for (double* g : gptrs) *g *= inv;
        adam_step(pptrs, gptrs, adam, config.lr);
        pos = end;
      }
      const double dev_f1 = dev_inputs.empty()
                                ? f1_on(train_inputs, params, dimension, config.multiview)
                                : f1_on(dev_inputs, params, dimension, config.multiview);
      run_result.metrics.epoch_dev_f1.push_back(dev_f1);
      if (dev_f1 > best) {
        best = dev_f1;
        run_result.metrics.best_epoch = epoch;
        run_result.params = params;
      }
    }
    run_result.metrics.best_dev_f1 = best;
    run_result.metrics.final_train_f1 =
        f1_on(train_inputs, run_result.params, dimension, config.multiview);
    run_scores.push_back(best);
    result.runs.push_back(std::move(run_result));
  }
  result.mean_dev_f1 = text::mean_of(run_scores);
  result.std_dev_f1 = text::population_std(run_scores);
  return result;
}

namespace {
constexpr char kFusionMagic[8] = {'S', 'P', 'F', 'U', 'S', 'E', '0', '1'};
}

void save_fusion(const FusionParams& params, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("FileOpen", "cannot write " + path.string());
  out.write(kFusionMagic, sizeof(kFusionMagic));
  auto put64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  auto put_vec = [&](const std::vector<double>& v) {
    put64(v.size());
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  };
  auto put_mat = [&](const Matrix& m) {
    put64(m.rows);
    put64(m.cols);
    out.write(reinterpret_cast<const char*>(m.a.data()),
              static_cast<std::streamsize>(m.a.size() * sizeof(double)));
  };
  put64(static_cast<std::uint64_t>(params.d));
  put64(static_cast<std::uint64_t>(params.L_max));
  put64(params.vocab_size);
  put_mat(params.E);
  put_mat(params.P);
  put_mat(params.W1);
  put_mat(params.U1);
  put_vec(params.b1);
  put_vec(params.w_dial);
  auto putd = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  putd(params.b_dial);
  put_vec(params.w_scene);
  putd(params.b_scene);
  put_mat(params.Wc);
  put_vec(params.bc);
}

FusionParams load_fusion(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data("FileOpen", "cannot read " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kFusionMagic, 8) != 0)
    throw_data("BadModelFile", path.string() + ": wrong magic");
  auto get64 = [&]() {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto get_vec = [&](std::vector<double>& v) {
    v.assign(get64(), 0.0);
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  };
  auto get_mat = [&](Matrix& m) {
    std::size_t r = get64(), c = get64();
    m = Matrix(r, c);
    in.read(reinterpret_cast<char*>(m.a.data()),
            static_cast<std::streamsize>(m.a.size() * sizeof(double)));
  };
  FusionParams p;
  p.d = static_cast<int>(get64());
  p.L_max = static_cast<int>(get64());
  p.vocab_size = static_cast<std::uint32_t>(get64());
  get_mat(p.E);
  get_mat(p.P);
  get_mat(p.W1);
  get_mat(p.U1);
  get_vec(p.b1);
  get_vec(p.w_dial);
  auto getd = [&]() {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  p.b_dial = getd();
  get_vec(p.w_scene);
  p.b_scene = getd();
  get_mat(p.Wc);
  get_vec(p.bc);
  if (!in) throw_data("BadModelFile", path.string() + ": truncated");
  return p;
}

}  // namespace sp::model
