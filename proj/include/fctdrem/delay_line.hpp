#pragma once

#include <cstddef>
#include <vector>

namespace fctdrem {

/**
 * Fixed-delay ring buffer.
 *
 * Holds the current value and the `delay` values before it. Until `delay`
 * values have been pushed, delayed() returns the fill value, which stands in
 * for the pre-history.
 */
template <typename T>
class DelayLine {
public:
    DelayLine(std::size_t delay, T fill) : data_(delay + 1, fill) {}

    void push(T value) {
        data_[pos_] = std::move(value);
        pos_ = (pos_ + 1) % data_.size();
    }

    const T &current() const { return data_[(pos_ + data_.size() - 1) % data_.size()]; }

    /// Value pushed `delay()` steps before current().
    const T &delayed() const { return data_[pos_]; }

    std::size_t delay() const { return data_.size() - 1; }

private:
    std::vector<T> data_;
    std::size_t pos_ = 0;
};

} // namespace fctdrem
