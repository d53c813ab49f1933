#include "gcvsa/codebook.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace gcvsa {

namespace {

constexpr char kMagic[4] = {'G', 'C', 'V', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("codebook: truncated file");
    return v;
}

}  // namespace

Codebook::Codebook(const GridConfig& cfg) : cfg_(cfg), dim_(cfg.tensor_size()) {
    cfg_.validate();
}

void Codebook::add(const std::string& key, const GcTensor& v) {
    if (!(v.config() == cfg_))
        throw std::invalid_argument("codebook: config mismatch");
    if (index_.count(key))
        throw std::invalid_argument("codebook: duplicate key: " + key);
    double n2 = 0.0;
    for (double x : v.data()) n2 += x * x;
    if (n2 == 0.0)
        throw std::invalid_argument("codebook: zero-norm entry: " + key);
    const double inv = 1.0 / std::sqrt(n2);
    index_.emplace(key, keys_.size());
    keys_.push_back(key);
    for (double x : v.data()) rows_.push_back(x * inv);
}

std::optional<std::size_t> Codebook::index_of(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

GcTensor Codebook::entry(std::size_t index) const {
    if (index >= keys_.size())
        throw std::out_of_range("codebook: entry index out of range");
    const double* row = rows_.data() + index * dim_;
    return GcTensor(cfg_, std::vector<double>(row, row + dim_));
}

std::vector<double> Codebook::similarities(const GcTensor& v) const {
    if (keys_.empty()) throw std::invalid_argument("codebook: empty codebook");
    if (!(v.config() == cfg_))
        throw std::invalid_argument("codebook: config mismatch");
    double n2 = 0.0;
    for (double x : v.data()) n2 += x * x;
    if (n2 == 0.0) throw std::invalid_argument("codebook: zero-norm query");
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<double> sims(keys_.size());
    const double* q = v.data().data();
    for (std::size_t r = 0; r < keys_.size(); ++r) {
        const double* row = rows_.data() + r * dim_;
        double acc = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) acc += row[i] * q[i];
        sims[r] = acc * inv;
    }
    return sims;
}

std::vector<std::pair<std::string, double>> Codebook::readout(
    const GcTensor& v) const {
    const auto sims = similarities(v);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(sims.size());
    for (std::size_t i = 0; i < sims.size(); ++i)
        out.emplace_back(keys_[i], sims[i]);
    return out;
}

std::size_t Codebook::cleanup_index(const GcTensor& v) const {
    const auto sims = similarities(v);
    std::size_t best = 0;
    for (std::size_t i = 1; i < sims.size(); ++i)
        if (sims[i] > sims[best]) best = i;
    return best;
}

std::pair<std::string, double> Codebook::cleanup(const GcTensor& v) const {
    const auto sims = similarities(v);
    std::size_t best = 0;
    for (std::size_t i = 1; i < sims.size(); ++i)
        if (sims[i] > sims[best]) best = i;
    return {keys_[best], sims[best]};
}

GcTensor Codebook::superpose(std::span<const double> weights) const {
    if (weights.size() != keys_.size())
        throw std::invalid_argument("codebook: weight count does not match");
    GcTensor out(cfg_);
    auto& dst = out.data();
    for (std::size_t r = 0; r < keys_.size(); ++r) {
        const double w = weights[r];
        if (w == 0.0) continue;
        const double* row = rows_.data() + r * dim_;
        for (std::size_t i = 0; i < dim_; ++i) dst[i] += w * row[i];
    }
    return out;
}

void Codebook::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("codebook: cannot open for write: " + path);
    os.write(kMagic, 4);
    put(os, kVersion);
    put(os, static_cast<std::int32_t>(cfg_.n));
    put(os, static_cast<std::int32_t>(cfg_.n_theta));
    put(os, static_cast<std::int32_t>(cfg_.n_s));
    put(os, cfg_.s_min);
    put(os, cfg_.growth);
    put(os, cfg_.seed);
    put(os, static_cast<std::uint64_t>(keys_.size()));
    put(os, static_cast<std::uint64_t>(dim_));
    for (const auto& k : keys_) {
        put(os, static_cast<std::uint32_t>(k.size()));
        os.write(k.data(), static_cast<std::streamsize>(k.size()));
    }
    os.write(reinterpret_cast<const char*>(rows_.data()),
             static_cast<std::streamsize>(rows_.size() * sizeof(double)));
    if (!os) throw std::runtime_error("codebook: write failed: " + path);
}

Codebook Codebook::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("codebook: cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || magic[0] != 'G' || magic[1] != 'C' || magic[2] != 'V' ||
        magic[3] != 'C')
        throw std::runtime_error("codebook: bad magic");
    const auto version = get<std::uint32_t>(is);
    if (version != kVersion) throw std::runtime_error("codebook: bad version");
    GridConfig cfg;
    cfg.n = get<std::int32_t>(is);
    cfg.n_theta = get<std::int32_t>(is);
    cfg.n_s = get<std::int32_t>(is);
    cfg.s_min = get<double>(is);
    cfg.growth = get<double>(is);
    cfg.seed = get<std::uint64_t>(is);
    const auto count = get<std::uint64_t>(is);
    const auto dim = get<std::uint64_t>(is);
    Codebook cb(cfg);
    if (dim != cb.dim_) throw std::runtime_error("codebook: dim mismatch");
    cb.keys_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto len = get<std::uint32_t>(is);
        std::string key(len, '\0');
        is.read(key.data(), len);
        if (!is) throw std::runtime_error("codebook: truncated key");
        if (cb.index_.count(key))
            throw std::runtime_error("codebook: duplicate key in file");
        cb.index_.emplace(key, cb.keys_.size());
        cb.keys_.push_back(std::move(key));
    }
    cb.rows_.resize(count * cb.dim_);
    is.read(reinterpret_cast<char*>(cb.rows_.data()),
            static_cast<std::streamsize>(cb.rows_.size() * sizeof(double)));
    if (!is) throw std::runtime_error("codebook: truncated payload");
    return cb;
}

}  // namespace gcvsa
