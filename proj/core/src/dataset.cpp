// SPDX-License-Identifier: Apache-2.0

#include "uqnn/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "uqnn/errors.hpp"
#include "uqnn/rng.hpp"
#include "uqnn/simulate.hpp"

namespace uqnn {

namespace {

constexpr char kMagic[4] = {'U', 'Q', 'N', 'N'};
constexpr std::uint16_t kVersion = 1;

// Stream index for the split shuffle; far above any plausible sample
// count so it never collides with per-sample streams 0..count-1.
constexpr std::uint64_t kSplitStream = 0xF0F0F0F0F0F0F0F0ULL;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void put_f64(std::string& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

// Cursor over a loaded file image. Reads raise TruncatedError when the
// requested bytes run past the end.
class Reader {
  public:
    explicit Reader(const std::string& buf) : buf_(buf) {}

    std::uint16_t u16() {
        need(2);
        auto lo = static_cast<std::uint8_t>(buf_[pos_]);
        auto hi = static_cast<std::uint8_t>(buf_[pos_ + 1]);
        pos_ += 2;
        return static_cast<std::uint16_t>(lo | (hi << 8));
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf_[pos_ + i])) << (8 * i);
        }
        pos_ += 8;
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    void raw(char* dst, std::size_t n) {
        need(n);
        std::memcpy(dst, buf_.data() + pos_, n);
        pos_ += n;
    }

    std::size_t remaining() const { return buf_.size() - pos_; }

  private:
    void need(std::size_t n) const {
        if (buf_.size() - pos_ < n) {
            throw TruncatedError("dataset file truncated: need " + std::to_string(n) +
                                 " more bytes at offset " + std::to_string(pos_));
        }
    }

    const std::string& buf_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<Sample> Dataset::train_samples() const {
    std::vector<Sample> out;
    out.reserve(train_indices.size());
    for (std::size_t i : train_indices) out.push_back(samples.at(i));
    return out;
}

std::vector<Sample> Dataset::test_samples() const {
    std::vector<Sample> out;
    out.reserve(test_indices.size());
    for (std::size_t i : test_indices) out.push_back(samples.at(i));
    return out;
}

StateVector random_state(std::size_t n, std::mt19937_64& rng) {
    if (n == 0) throw ValidationError("random_state: n must be >= 1");
    const std::size_t d = std::size_t{1} << n;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(d);
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            amps[i] = cplx(re, im);
            norm_sq += re * re + im * im;
        }
    } while (norm_sq == 0.0);  // vanishing draw has probability zero
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= inv;
    return StateVector(std::move(amps));
}

std::vector<Sample> generate_samples(const Circuit& circuit, std::size_t count,
                                     std::uint64_t seed) {
    circuit.validate();
    std::vector<Sample> samples;
    samples.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::mt19937_64 rng(stream_seed(seed, t));
        StateVector input = random_state(circuit.num_qubits, rng);
        StateVector output = run_circuit(circuit, input);
        samples.push_back(Sample{std::move(input), std::move(output)});
    }
    return samples;
}

Dataset generate(const Circuit& circuit, std::size_t count, std::uint64_t seed,
                 double test_fraction) {
    if (count < 10) throw ValidationError("generate: count must be >= 10");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ValidationError("generate: test_fraction must be in (0, 1)");
    }

    Dataset ds;
    ds.n = circuit.num_qubits;
    ds.seed = seed;
    ds.samples = generate_samples(circuit, count, seed);

    std::size_t test_count =
        static_cast<std::size_t>(std::llround(static_cast<double>(count) * test_fraction));
    test_count = std::clamp<std::size_t>(test_count, 1, count - 1);

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 split_rng(stream_seed(seed, kSplitStream));
    deterministic_shuffle(order, split_rng);

    ds.train_indices.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(test_count));
    ds.test_indices.assign(order.end() - static_cast<std::ptrdiff_t>(test_count), order.end());
    std::sort(ds.train_indices.begin(), ds.train_indices.end());
    std::sort(ds.test_indices.begin(), ds.test_indices.end());
    return ds;
}

void save(const Dataset& ds, const std::string& path) {
    const std::size_t d = ds.dim();
    std::string buf;
    buf.reserve(32 + 8 * ds.train_indices.size() + ds.samples.size() * d * 32);

    buf.append(kMagic, 4);
    put_u16(buf, kVersion);
    put_u16(buf, static_cast<std::uint16_t>(ds.n));
    put_u64(buf, ds.samples.size());
    put_u64(buf, ds.seed);
    put_u64(buf, ds.train_indices.size());
    for (std::size_t i : ds.train_indices) put_u64(buf, i);
    for (const Sample& s : ds.samples) {
        if (s.input.dim() != d || s.output.dim() != d) {
            throw ShapeError("save: sample dimension does not match dataset qubit count");
        }
        for (std::size_t i = 0; i < d; ++i) {
            put_f64(buf, s.input[i].real());
            put_f64(buf, s.input[i].imag());
        }
        for (std::size_t i = 0; i < d; ++i) {
            put_f64(buf, s.output[i].real());
            put_f64(buf, s.output[i].imag());
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("save: cannot open '" + path + "' for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("save: write to '" + path + "' failed");
}

Dataset load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load: cannot open '" + path + "'");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Reader r(buf);
    char magic[4];
    r.raw(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw FormatError("load: bad magic; not a dataset file");
    }
    const std::uint16_t version = r.u16();
    if (version != kVersion) {
        throw FormatError("load: unsupported version " + std::to_string(version));
    }
    const std::uint16_t n = r.u16();
    if (n == 0 || n > 16) {
        throw FormatError("load: qubit count " + std::to_string(n) + " out of range");
    }
    const std::uint64_t count = r.u64();
    const std::uint64_t seed = r.u64();
    const std::uint64_t train_count = r.u64();
    if (train_count > count) {
        throw DimensionError("load: train count " + std::to_string(train_count) +
                             " exceeds sample count " + std::to_string(count));
    }

    const std::size_t d = std::size_t{1} << n;
    // Everything after the fixed header: train indices plus per-sample
    // payload of 2 states x dim amplitudes x (re, im) float64.
    const std::size_t expected = 8 * static_cast<std::size_t>(train_count) +
                                 static_cast<std::size_t>(count) * d * 32;
    if (r.remaining() > expected) {
        throw DimensionError("load: payload larger than header describes (" +
                             std::to_string(r.remaining()) + " bytes, expected " +
                             std::to_string(expected) + ")");
    }
    // Shorter payloads surface as TruncatedError from the reads below.

    Dataset ds;
    ds.n = n;
    ds.seed = seed;
    ds.train_indices.resize(train_count);
    for (std::uint64_t i = 0; i < train_count; ++i) {
        const std::uint64_t idx = r.u64();
        if (idx >= count) {
            throw FormatError("load: train index " + std::to_string(idx) + " out of range");
        }
        ds.train_indices[i] = static_cast<std::size_t>(idx);
    }

    ds.samples.reserve(count);
    for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<cplx> input(d), output(d);
        for (std::size_t i = 0; i < d; ++i) {
            const double re = r.f64();
            const double im = r.f64();
            input[i] = cplx(re, im);
        }
        for (std::size_t i = 0; i < d; ++i) {
            const double re = r.f64();
            const double im = r.f64();
            output[i] = cplx(re, im);
        }
        ds.samples.push_back(Sample{StateVector(std::move(input)), StateVector(std::move(output))});
    }

    // Test indices are the sorted complement of the stored train set.
    std::vector<bool> in_train(count, false);
    for (std::size_t i : ds.train_indices) in_train[i] = true;
    for (std::size_t i = 0; i < count; ++i) {
        if (!in_train[i]) ds.test_indices.push_back(i);
    }
    return ds;
}

}  // namespace uqnn
