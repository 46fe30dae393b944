// SPDX-License-Identifier: Apache-2.0

#ifndef UQNN_TRAINER_HPP
#define UQNN_TRAINER_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uqnn/dataset.hpp"
#include "uqnn/linalg.hpp"

namespace uqnn {

/// How the weight matrix starts out. BlockRotation is the default:
/// block-diagonal 2x2 rotations with angles drawn from U[0, pi/2],
/// i.e. the Cayley transform of skew blocks [[0,v],[-v,0]] with
/// v = tan(t/2). ProjectedRandom orthonormalizes a complex Gaussian
/// matrix instead.
enum class InitMode { BlockRotation, ProjectedRandom };

struct TrainConfig {
    double learning_rate = 0.05;  // must lie strictly in (0, 1)
    std::size_t epochs = 2000;
    std::size_t batch_size = 32;   // 0 means full batch
    std::size_t mapping_step = 1;  // project every MS-th weight update
    std::uint64_t seed = 0;
    InitMode init_mode = InitMode::BlockRotation;
    double early_stop_mse = 1e-6;  // stop once test MSE drops below this
    // Overlap threshold for the accuracy metric. "Accuracy" here is an
    // operationalization (fraction of test states whose squared overlap
    // with the target exceeds the threshold); adjust as needed.
    double accuracy_threshold = 0.99;
    // When false, weight updates are applied raw with no unitary
    // projection at all (including the final one). Exists only to make
    // the unconstrained baseline observable in tests; leave true for
    // real training.
    bool constrain = true;

    void validate() const;  // throws ValidationError on bad fields
};

/// Single-layer network whose weight matrix is the learned unitary.
struct UnitaryModel {
    std::size_t n = 0;  // qubit count
    ComplexMatrix U;    // 2^n x 2^n

    std::size_t dim() const { return std::size_t{1} << n; }
};

struct EpochMetrics {
    std::size_t epoch = 0;  // 1-based
    double train_mse = 0.0;
    double test_mse = 0.0;
    double test_r2 = 0.0;
    double test_accuracy = 0.0;
    double unitarity_err = 0.0;
};

struct TrainReport {
    TrainConfig config;
    std::vector<EpochMetrics> trace;
    UnitaryModel final_model;
    std::optional<double> target_fidelity;  // filled by callers that know the target
    // Largest unitarity error observed immediately after any projection
    // (and after the forced final one). The per-epoch unitarity_err in
    // the trace is sampled at epoch end, which for mapping_step > 1 may
    // fall between projections; this field tracks the invariant proper.
    double max_projected_unitarity_err = 0.0;
    std::size_t total_updates = 0;
};

/// Block-diagonal matrix of 2x2 rotations by the given angles; one
/// trailing 1 on the diagonal when dim is odd. angles.size() must be
/// dim / 2 (rounded down).
ComplexMatrix block_rotation_matrix(std::size_t dim, const std::vector<double>& angles);

UnitaryModel init_block_rotation(std::size_t n, std::mt19937_64& rng);
UnitaryModel init_projected_random(std::size_t n, std::mt19937_64& rng);
UnitaryModel init_model(std::size_t n, InitMode mode, std::mt19937_64& rng);

/// O = U x. The activation is the identity: the evolution being
/// learned is linear, and any nonlinearity would break unitarity.
StateVector forward(const UnitaryModel& model, const StateVector& x);

/// Mean squared error over the real and imaginary components treated
/// as separate real outputs: (1/(2 dim)) sum_i [(Re p_i - Re y_i)^2 +
/// (Im p_i - Im y_i)^2].
double loss_mse(const StateVector& predicted, const StateVector& target);

/// Wirtinger gradient of the batch-mean loss with respect to conj(U):
/// G = (1/(B dim)) sum_b (U x_b - y_b) x_b^dagger. Reassembling the
/// real/imag-split real gradient into complex form gives the same
/// matrix.
ComplexMatrix gradient(const UnitaryModel& model, const std::vector<Sample>& batch);

/// Projected gradient descent: per batch W' = U - eta G, with
/// U <- gram_schmidt(W') every mapping_step-th update and always once
/// more after the last update. Appends one EpochMetrics per epoch and
/// stops early when test MSE falls below config.early_stop_mse.
/// Throws DivergenceError if the training loss turns non-finite.
TrainReport train(UnitaryModel model, const Dataset& dataset, const TrainConfig& config);

/// 1 - SSE/SST over the concatenated real and imaginary components of
/// all vectors; SST is taken about the mean of the target components.
/// SST = 0 returns 1 when SSE = 0 and throws DegenerateVarianceError
/// otherwise.
double r2_score(const std::vector<StateVector>& predictions,
                const std::vector<StateVector>& targets);

/// Fraction of samples with squared overlap |<t|p>|^2 / ||p||^2 >=
/// threshold. Global phase does not matter; a zero-norm prediction
/// counts as a miss.
double accuracy(const std::vector<StateVector>& predictions,
                const std::vector<StateVector>& targets, double threshold = 0.99);

/// |tr(target^dagger U)| / 2^n, in [0, 1]; equals 1 exactly when
/// U = e^{i phi} target. Both matrices must be unitary within 1e-6.
double target_fidelity(const UnitaryModel& model, const ComplexMatrix& target);

/// CSV with header epoch,train_mse,test_mse,test_r2,test_accuracy,
/// unitarity_err; floats printed with 17 significant digits so the
/// file round-trips bit-exactly.
std::string metrics_to_csv(const std::vector<EpochMetrics>& trace);
void write_metrics_csv(const std::vector<EpochMetrics>& trace, const std::string& path);
std::vector<EpochMetrics> parse_metrics_csv(const std::string& text);
std::vector<EpochMetrics> read_metrics_csv(const std::string& path);

/// Binary .uqnm model file: magic "UQNM", n as u16, then the 2^{2n}
/// matrix entries row-major as (re, im) float64 pairs, little-endian.
void save_model(const UnitaryModel& model, const std::string& path);
UnitaryModel load_model(const std::string& path);

}  // namespace uqnn

#endif  // UQNN_TRAINER_HPP
