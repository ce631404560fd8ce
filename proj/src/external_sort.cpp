#include "pcorr/external_sort.hpp"

#include <algorithm>
#include <cstring>
#include <memory>
#include <queue>
#include <random>
#include <stdexcept>

namespace pcorr {

namespace {

std::filesystem::path make_temp_dir() {
    auto base = std::filesystem::temp_directory_path();
    std::random_device rd;
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto p = base / ("pcorr-sort-" + std::to_string(rd()));
        std::error_code ec;
        if (std::filesystem::create_directory(p, ec)) return p;
    }
    throw std::runtime_error("cannot create temp directory for spill files");
}

void write_all(std::FILE* f, const double* data, std::size_t n) {
    if (n && std::fwrite(data, sizeof(double), n, f) != n)
        throw std::runtime_error("short write on spill file");
}

} // namespace

ExternalSorter::ExternalSorter(std::size_t run_capacity)
    : run_capacity_(std::max<std::size_t>(run_capacity, 1024)), dir_(make_temp_dir()) {
    buffer_.reserve(run_capacity_);
}

ExternalSorter::~ExternalSorter() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
}

void ExternalSorter::push(double v) {
    buffer_.push_back(v);
    ++count_;
    if (buffer_.size() >= run_capacity_) spill();
}

void ExternalSorter::spill() {
    if (buffer_.empty()) return;
    std::sort(buffer_.begin(), buffer_.end());
    auto path = dir_ / ("run-" + std::to_string(runs_.size()) + ".bin");
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open spill file " + path.string());
    write_all(f, buffer_.data(), buffer_.size());
    std::fclose(f);
    runs_.push_back(path);
    buffer_.clear();
}

void ExternalSorter::finish() {
    if (finished_) return;
    finished_ = true;
    sorted_path_ = dir_ / "sorted.bin";

    if (runs_.empty()) {
        // everything fit in one run; sort and write directly
        std::sort(buffer_.begin(), buffer_.end());
        std::FILE* f = std::fopen(sorted_path_.string().c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open " + sorted_path_.string());
        write_all(f, buffer_.data(), buffer_.size());
        std::fclose(f);
        buffer_.clear();
        buffer_.shrink_to_fit();
        return;
    }
    spill();

    // single-pass k-way merge of the sorted runs
    std::vector<std::unique_ptr<SortedReader>> readers;
    readers.reserve(runs_.size());
    for (const auto& r : runs_) readers.push_back(std::make_unique<SortedReader>(r));

    using Item = std::pair<double, std::size_t>; // value, reader index
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < readers.size(); ++i)
        if (!readers[i]->done()) heap.emplace(readers[i]->peek(), i);

    std::FILE* out = std::fopen(sorted_path_.string().c_str(), "wb");
    if (!out) throw std::runtime_error("cannot open " + sorted_path_.string());
    std::vector<double> obuf;
    obuf.reserve(1 << 16);
    while (!heap.empty()) {
        auto [v, i] = heap.top();
        heap.pop();
        obuf.push_back(v);
        if (obuf.size() == obuf.capacity()) {
            write_all(out, obuf.data(), obuf.size());
            obuf.clear();
        }
        readers[i]->advance();
        if (!readers[i]->done()) heap.emplace(readers[i]->peek(), i);
    }
    write_all(out, obuf.data(), obuf.size());
    std::fclose(out);

    for (const auto& r : runs_) {
        std::error_code ec;
        std::filesystem::remove(r, ec);
    }
    runs_.clear();
}

SortedReader::SortedReader(const std::filesystem::path& path, std::size_t buf_elems)
    : buf_(std::max<std::size_t>(buf_elems, 256)) {
    f_ = std::fopen(path.string().c_str(), "rb");
    if (!f_) throw std::runtime_error("cannot open " + path.string());
    refill();
    if (fill_ == 0) {
        done_ = true;
    } else {
        current_ = buf_[pos_++];
    }
}

SortedReader::~SortedReader() {
    if (f_) std::fclose(f_);
}

void SortedReader::refill() {
    fill_ = std::fread(buf_.data(), sizeof(double), buf_.size(), f_);
    pos_ = 0;
}

void SortedReader::advance() {
    ++consumed_;
    if (pos_ == fill_) {
        refill();
        if (fill_ == 0) {
            done_ = true;
            return;
        }
    }
    current_ = buf_[pos_++];
}

} // namespace pcorr
