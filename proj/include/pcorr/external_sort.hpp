#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace pcorr {

// Out-of-core sort of doubles: feed values, runs of at most run_capacity
// elements are sorted and spilled to a temp file; finish() merges them into
// one sorted file readable through SortedReader. Used when the N^2
// difference multiset exceeds the memory budget.
class ExternalSorter {
  public:
    explicit ExternalSorter(std::size_t run_capacity);
    ~ExternalSorter();
    ExternalSorter(const ExternalSorter&) = delete;
    ExternalSorter& operator=(const ExternalSorter&) = delete;

    void push(double v);
    void finish(); // after this, sorted_path() is valid

    const std::filesystem::path& sorted_path() const { return sorted_path_; }
    std::uint64_t count() const { return count_; }

  private:
    void spill();

    std::size_t run_capacity_;
    std::vector<double> buffer_;
    std::vector<std::filesystem::path> runs_;
    std::filesystem::path dir_;
    std::filesystem::path sorted_path_;
    std::uint64_t count_ = 0;
    bool finished_ = false;
};

// buffered sequential reader over a file of raw doubles
class SortedReader {
  public:
    explicit SortedReader(const std::filesystem::path& path, std::size_t buf_elems = 1 << 16);
    ~SortedReader();
    SortedReader(const SortedReader&) = delete;
    SortedReader& operator=(const SortedReader&) = delete;

    bool done() const { return done_; }
    double peek() const { return current_; }
    void advance();
    std::uint64_t consumed() const { return consumed_; }

  private:
    void refill();

    std::FILE* f_ = nullptr;
    std::vector<double> buf_;
    std::size_t pos_ = 0, fill_ = 0;
    double current_ = 0.0;
    bool done_ = false;
    std::uint64_t consumed_ = 0;
};

} // namespace pcorr
