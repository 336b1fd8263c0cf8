// Copyright 2026 The Noise Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noise_lab/parallel.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace noise_lab {

namespace {

std::atomic<size_t> g_num_threads{0};

}  // namespace

void set_num_threads(size_t n) {
    g_num_threads = n;
}

size_t num_threads() {
    size_t n = g_num_threads;
    if (n == 0) {
        n = std::max<size_t>(1, std::thread::hardware_concurrency());
    }
    return n;
}

void parallel_chunks(size_t num_chunks, const std::function<void(size_t)> &f) {
    size_t workers = std::min(num_threads(), num_chunks);
    if (workers <= 1) {
        for (size_t c = 0; c < num_chunks; c++) {
            f(c);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        while (true) {
            size_t c = next++;
            if (c >= num_chunks) {
                return;
            }
            try {
                f(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = num_chunks;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (size_t w = 1; w < workers; w++) {
        pool.emplace_back(work);
    }
    work();
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace noise_lab
