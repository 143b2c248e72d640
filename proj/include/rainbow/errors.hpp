#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rainbow {

/// Thrown when a search or enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed RTS/RTG/JSON input. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct Budget {
    std::uint64_t max_sequences = 100'000'000;
    std::uint64_t max_orderings = 1'000'000;
    /// Largest graph handed to the unordered (up-to-isomorphism) recognizer.
    std::size_t max_iso_vertices = 10;
    double time_limit_seconds = 60.0;

    static Budget unlimited() {
        Budget b;
        b.max_sequences = UINT64_MAX;
        b.max_orderings = UINT64_MAX;
        b.max_iso_vertices = SIZE_MAX;
        b.time_limit_seconds = 0.0;
        return b;
    }
};

/// Counts work units against a limit and checks a wall-clock deadline every
/// few thousand units.
class BudgetMeter {
public:
    BudgetMeter(std::uint64_t limit, double time_limit_seconds, std::string what)
        : limit_(limit), what_(std::move(what)) {
        if (time_limit_seconds > 0.0) {
            has_deadline_ = true;
            deadline_ = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(time_limit_seconds));
        }
    }

    void charge(std::uint64_t units = 1) {
        used_ += units;
        if (used_ > limit_) {
            throw BudgetExceeded(what_ + ": budget of " + std::to_string(limit_) + " exhausted");
        }
        if (has_deadline_ && (used_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_) {
            throw BudgetExceeded(what_ + ": time limit exceeded");
        }
    }

    std::uint64_t used() const noexcept { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    bool has_deadline_ = false;
    std::chrono::steady_clock::time_point deadline_{};
    std::string what_;
};

}  // namespace rainbow
