// SPDX-License-Identifier: Apache-2.0

#include "uqnn/trainer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "uqnn/errors.hpp"
#include "uqnn/rng.hpp"

namespace uqnn {

namespace {

constexpr char kModelMagic[4] = {'U', 'Q', 'N', 'M'};

// Stream offset for the per-epoch batch shuffle, well clear of the
// per-sample streams the dataset generator uses.
constexpr std::uint64_t kShuffleStreamBase = 0x45504F4348000000ULL;

const char* kCsvHeader = "epoch,train_mse,test_mse,test_r2,test_accuracy,unitarity_err";

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Accumulates the unnormalized gradient sum_b (U x_b - y_b) x_b^dagger
// into g and returns the summed per-sample MSE loss, so the training
// loop gets both from a single pass over the batch.
double accumulate_grad_and_loss(const ComplexMatrix& U,
                                const std::vector<Sample>& batch,
                                std::size_t first, std::size_t last,
                                ComplexMatrix& g) {
    const std::size_t d = U.rows();
    double loss_sum = 0.0;
    std::vector<cplx> resid(d);
    for (std::size_t b = first; b < last; ++b) {
        const StateVector& x = batch[b].input;
        const StateVector& y = batch[b].output;
        if (x.dim() != d || y.dim() != d) {
            throw ShapeError("gradient: sample dimension does not match model");
        }
        double sample_err = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            cplx acc(0.0, 0.0);
            for (std::size_t c = 0; c < d; ++c) acc += U(r, c) * x[c];
            resid[r] = acc - y[r];
            sample_err += std::norm(resid[r]);
        }
        loss_sum += sample_err / (2.0 * static_cast<double>(d));
        for (std::size_t r = 0; r < d; ++r) {
            const cplx rr = resid[r];
            for (std::size_t c = 0; c < d; ++c) g(r, c) += rr * std::conj(x[c]);
        }
    }
    return loss_sum;
}

void check_model(const UnitaryModel& model) {
    if (!model.U.square() || model.U.rows() != model.dim()) {
        throw ShapeError("model weight matrix must be 2^n x 2^n");
    }
}

void put_u16_le(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_f64_le(std::string& out, double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

}  // namespace

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0 && learning_rate < 1.0)) {
        throw ValidationError("learning_rate must lie strictly in (0, 1)");
    }
    if (epochs == 0) throw ValidationError("epochs must be >= 1");
    if (mapping_step == 0) throw ValidationError("mapping_step must be >= 1");
    if (!(early_stop_mse >= 0.0)) throw ValidationError("early_stop_mse must be >= 0");
    if (!(accuracy_threshold > 0.0 && accuracy_threshold <= 1.0)) {
        throw ValidationError("accuracy_threshold must lie in (0, 1]");
    }
}

ComplexMatrix block_rotation_matrix(std::size_t dim, const std::vector<double>& angles) {
    if (dim == 0) throw ValidationError("block_rotation_matrix: dim must be >= 1");
    if (angles.size() != dim / 2) {
        throw ValidationError("block_rotation_matrix: need one angle per 2x2 block");
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t b = 0; b < dim / 2; ++b) {
        const double c = std::cos(angles[b]);
        const double s = std::sin(angles[b]);
        const std::size_t i = 2 * b;
        m(i, i) = c;
        m(i, i + 1) = -s;
        m(i + 1, i) = s;
        m(i + 1, i + 1) = c;
    }
    if (dim % 2 == 1) m(dim - 1, dim - 1) = 1.0;
    return m;
}

UnitaryModel init_block_rotation(std::size_t n, std::mt19937_64& rng) {
    if (n == 0) throw ValidationError("init_block_rotation: n must be >= 1");
    const std::size_t d = std::size_t{1} << n;
    std::uniform_real_distribution<double> angle(0.0, std::acos(-1.0) / 2.0);
    std::vector<double> angles(d / 2);
    for (auto& t : angles) t = angle(rng);
    return UnitaryModel{n, block_rotation_matrix(d, angles)};
}

UnitaryModel init_projected_random(std::size_t n, std::mt19937_64& rng) {
    if (n == 0) throw ValidationError("init_projected_random: n must be >= 1");
    const std::size_t d = std::size_t{1} << n;
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            m(r, c) = cplx(re, im);
        }
    }
    return UnitaryModel{n, gram_schmidt(m)};
}

UnitaryModel init_model(std::size_t n, InitMode mode, std::mt19937_64& rng) {
    return mode == InitMode::BlockRotation ? init_block_rotation(n, rng)
                                           : init_projected_random(n, rng);
}

StateVector forward(const UnitaryModel& model, const StateVector& x) {
    check_model(model);
    if (x.dim() != model.dim()) throw ShapeError("forward: input dimension mismatch");
    return matvec(model.U, x);
}

double loss_mse(const StateVector& predicted, const StateVector& target) {
    if (predicted.dim() != target.dim()) throw ShapeError("loss_mse: dimension mismatch");
    if (predicted.dim() == 0) throw ShapeError("loss_mse: empty vectors");
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.dim(); ++i) {
        acc += std::norm(predicted[i] - target[i]);  // (dRe)^2 + (dIm)^2
    }
    return acc / (2.0 * static_cast<double>(predicted.dim()));
}

ComplexMatrix gradient(const UnitaryModel& model, const std::vector<Sample>& batch) {
    check_model(model);
    if (batch.empty()) throw ValidationError("gradient: batch must be nonempty");
    const std::size_t d = model.dim();
    ComplexMatrix g(d, d);
    accumulate_grad_and_loss(model.U, batch, 0, batch.size(), g);
    const double scale = 1.0 / (static_cast<double>(batch.size()) * static_cast<double>(d));
    for (auto& v : g.data()) v *= scale;
    return g;
}

TrainReport train(UnitaryModel model, const Dataset& dataset, const TrainConfig& config) {
    config.validate();
    check_model(model);
    if (dataset.n != model.n) throw ShapeError("train: dataset qubit count does not match model");
    if (dataset.train_indices.empty()) throw ValidationError("train: empty training split");
    if (dataset.test_indices.empty()) throw ValidationError("train: empty test split");

    const std::size_t d = model.dim();
    const std::vector<Sample> train_set = dataset.train_samples();
    const std::vector<Sample> test_set = dataset.test_samples();
    const std::size_t train_count = train_set.size();
    const std::size_t batch_size =
        config.batch_size == 0 ? train_count : std::min(config.batch_size, train_count);

    TrainReport report;
    report.config = config;
    report.trace.reserve(config.epochs);

    std::vector<StateVector> test_targets;
    test_targets.reserve(test_set.size());
    for (const Sample& s : test_set) test_targets.push_back(s.output);

    std::vector<std::size_t> order(train_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Sample> batch;
    batch.reserve(batch_size);

    std::size_t updates = 0;
    auto project = [&]() {
        model.U = gram_schmidt(model.U);
        report.max_projected_unitarity_err =
            std::max(report.max_projected_unitarity_err, unitarity_error(model.U));
    };

    bool stopped_early = false;
    for (std::size_t epoch = 1; epoch <= config.epochs && !stopped_early; ++epoch) {
        std::mt19937_64 shuffle_rng(stream_seed(config.seed, kShuffleStreamBase + epoch));
        deterministic_shuffle(order, shuffle_rng);

        double epoch_loss_sum = 0.0;
        for (std::size_t start = 0; start < train_count; start += batch_size) {
            const std::size_t stop = std::min(start + batch_size, train_count);
            batch.clear();
            for (std::size_t i = start; i < stop; ++i) batch.push_back(train_set[order[i]]);

            ComplexMatrix g(d, d);
            const double batch_loss =
                accumulate_grad_and_loss(model.U, batch, 0, batch.size(), g);
            if (!std::isfinite(batch_loss)) {
                throw DivergenceError(epoch, config.learning_rate);
            }
            epoch_loss_sum += batch_loss;

            // W' = U - eta G, with G normalized by batch size and dim.
            const double step = config.learning_rate /
                                (static_cast<double>(batch.size()) * static_cast<double>(d));
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) model.U(r, c) -= step * g(r, c);
            }
            ++updates;
            if (config.constrain && updates % config.mapping_step == 0) project();
        }

        const double train_mse = epoch_loss_sum / static_cast<double>(train_count);
        if (!std::isfinite(train_mse) || !model.U.is_finite()) {
            throw DivergenceError(epoch, config.learning_rate);
        }

        std::vector<StateVector> preds;
        preds.reserve(test_set.size());
        double test_loss_sum = 0.0;
        for (const Sample& s : test_set) {
            preds.push_back(matvec(model.U, s.input));
            test_loss_sum += loss_mse(preds.back(), s.output);
        }
        const double test_mse = test_loss_sum / static_cast<double>(test_set.size());

        EpochMetrics em;
        em.epoch = epoch;
        em.train_mse = train_mse;
        em.test_mse = test_mse;
        em.test_r2 = r2_score(preds, test_targets);
        em.test_accuracy = accuracy(preds, test_targets, config.accuracy_threshold);
        em.unitarity_err = unitarity_error(model.U);
        report.trace.push_back(em);

        if (test_mse < config.early_stop_mse) stopped_early = true;
    }

    // Mapping is mandatory at the very end regardless of where the
    // update counter stood (skipped only in the unconstrained mode,
    // which exists to show why the mapping is needed).
    if (config.constrain) project();

    report.final_model = std::move(model);
    report.total_updates = updates;
    return report;
}

double r2_score(const std::vector<StateVector>& predictions,
                const std::vector<StateVector>& targets) {
    if (predictions.empty() || predictions.size() != targets.size()) {
        throw ShapeError("r2_score: prediction/target lists must be nonempty and equal length");
    }

    double target_sum = 0.0;
    std::size_t n_components = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (predictions[i].dim() != targets[i].dim()) {
            throw ShapeError("r2_score: dimension mismatch at sample " + std::to_string(i));
        }
        for (std::size_t k = 0; k < targets[i].dim(); ++k) {
            target_sum += targets[i][k].real() + targets[i][k].imag();
            n_components += 2;
        }
    }
    const double mean = target_sum / static_cast<double>(n_components);

    double sse = 0.0;
    double sst = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        for (std::size_t k = 0; k < targets[i].dim(); ++k) {
            const double tre = targets[i][k].real();
            const double tim = targets[i][k].imag();
            const double pre = predictions[i][k].real();
            const double pim = predictions[i][k].imag();
            sse += (pre - tre) * (pre - tre) + (pim - tim) * (pim - tim);
            sst += (tre - mean) * (tre - mean) + (tim - mean) * (tim - mean);
        }
    }
    if (sst == 0.0) {
        if (sse == 0.0) return 1.0;
        throw DegenerateVarianceError("r2_score: targets have zero variance");
    }
    return 1.0 - sse / sst;
}

double accuracy(const std::vector<StateVector>& predictions,
                const std::vector<StateVector>& targets, double threshold) {
    if (predictions.empty() || predictions.size() != targets.size()) {
        throw ShapeError("accuracy: prediction/target lists must be nonempty and equal length");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i].dim() != targets[i].dim()) {
            throw ShapeError("accuracy: dimension mismatch at sample " + std::to_string(i));
        }
        const double norm_sq = predictions[i].norm() * predictions[i].norm();
        if (norm_sq == 0.0) continue;  // zero-norm prediction is a miss
        const double overlap = std::norm(inner(targets[i], predictions[i]));
        if (overlap / norm_sq >= threshold) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double target_fidelity(const UnitaryModel& model, const ComplexMatrix& target) {
    check_model(model);
    if (!target.square() || target.rows() != model.dim()) {
        throw ShapeError("target_fidelity: dimension mismatch");
    }
    if (unitarity_error(model.U) > 1e-6 || unitarity_error(target) > 1e-6) {
        throw ValidationError("target_fidelity: both matrices must be unitary within 1e-6");
    }
    // tr(T^dagger U) = sum_{rc} conj(T_rc) U_rc — no product matrix needed.
    cplx tr(0.0, 0.0);
    const std::size_t d = model.dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) tr += std::conj(target(r, c)) * model.U(r, c);
    }
    return std::abs(tr) / static_cast<double>(d);
}

std::string metrics_to_csv(const std::vector<EpochMetrics>& trace) {
    std::string out(kCsvHeader);
    out.push_back('\n');
    for (const EpochMetrics& em : trace) {
        out += std::to_string(em.epoch);
        out.push_back(',');
        out += format_g17(em.train_mse);
        out.push_back(',');
        out += format_g17(em.test_mse);
        out.push_back(',');
        out += format_g17(em.test_r2);
        out.push_back(',');
        out += format_g17(em.test_accuracy);
        out.push_back(',');
        out += format_g17(em.unitarity_err);
        out.push_back('\n');
    }
    return out;
}

void write_metrics_csv(const std::vector<EpochMetrics>& trace, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("write_metrics_csv: cannot open '" + path + "'");
    const std::string text = metrics_to_csv(trace);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw FormatError("write_metrics_csv: write to '" + path + "' failed");
}

std::vector<EpochMetrics> parse_metrics_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw FormatError("metrics CSV: missing or unexpected header");
    }
    std::vector<EpochMetrics> trace;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6) {
            throw FormatError("metrics CSV: line " + std::to_string(lineno) +
                              " has " + std::to_string(fields.size()) + " fields, expected 6");
        }
        try {
            EpochMetrics em;
            em.epoch = static_cast<std::size_t>(std::stoull(fields[0]));
            em.train_mse = std::stod(fields[1]);
            em.test_mse = std::stod(fields[2]);
            em.test_r2 = std::stod(fields[3]);
            em.test_accuracy = std::stod(fields[4]);
            em.unitarity_err = std::stod(fields[5]);
            trace.push_back(em);
        } catch (const std::exception&) {
            throw FormatError("metrics CSV: unparseable number on line " + std::to_string(lineno));
        }
    }
    return trace;
}

std::vector<EpochMetrics> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("read_metrics_csv: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_metrics_csv(text);
}

void save_model(const UnitaryModel& model, const std::string& path) {
    check_model(model);
    const std::size_t d = model.dim();
    std::string buf;
    buf.reserve(6 + d * d * 16);
    buf.append(kModelMagic, 4);
    put_u16_le(buf, static_cast<std::uint16_t>(model.n));
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            put_f64_le(buf, model.U(r, c).real());
            put_f64_le(buf, model.U(r, c).imag());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("save_model: cannot open '" + path + "'");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("save_model: write to '" + path + "' failed");
}

UnitaryModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_model: cannot open '" + path + "'");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 6) throw TruncatedError("load_model: file shorter than header");
    if (std::memcmp(buf.data(), kModelMagic, 4) != 0) {
        throw FormatError("load_model: bad magic; not a model file");
    }
    const std::uint16_t n = static_cast<std::uint16_t>(
        static_cast<std::uint8_t>(buf[4]) | (static_cast<std::uint8_t>(buf[5]) << 8));
    if (n == 0 || n > 16) {
        throw FormatError("load_model: qubit count " + std::to_string(n) + " out of range");
    }
    const std::size_t d = std::size_t{1} << n;
    const std::size_t expected = 6 + d * d * 16;
    if (buf.size() < expected) {
        throw TruncatedError("load_model: expected " + std::to_string(expected) +
                             " bytes, file has " + std::to_string(buf.size()));
    }
    if (buf.size() > expected) {
        throw DimensionError("load_model: payload larger than header describes");
    }

    UnitaryModel model{static_cast<std::size_t>(n), ComplexMatrix(d, d)};
    std::size_t pos = 6;
    auto f64 = [&]() {
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) {
            bits |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos + i])) << (8 * i);
        }
        pos += 8;
        return std::bit_cast<double>(bits);
    };
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double re = f64();
            const double im = f64();
            model.U(r, c) = cplx(re, im);
        }
    }
    return model;
}

}  // namespace uqnn
