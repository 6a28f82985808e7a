#include "swarmcit/worker_pool.h"

#include "swarmcit/errors.h"

namespace swarmcit {

WorkerPool::WorkerPool(int workers) : workers_(workers) {
  if (workers < 1) throw ConfigError("worker count must be at least 1");
  errors_.resize(static_cast<std::size_t>(workers));
  threads_.reserve(static_cast<std::size_t>(workers - 1));
  for (int b = 1; b < workers; ++b) {
    threads_.emplace_back([this, b] { loop(b); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  start_cv_.notify_all();
  threads_.clear();  // joins
}

void WorkerPool::loop(int block) {
  std::uint64_t seen = 0;
  while (true) {
    const std::function<void(int)>* task = nullptr;
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
      seen = generation_;
      task = task_;
    }
    std::exception_ptr error;
    try {
      (*task)(block);
    } catch (...) {
      error = std::current_exception();
    }
    {
      std::lock_guard lock(mutex_);
      errors_[static_cast<std::size_t>(block)] = error;
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void WorkerPool::run(const std::function<void(int)>& task) {
  if (workers_ == 1) {
    task(0);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    task_ = &task;
    pending_ = workers_ - 1;
    for (auto& e : errors_) e = nullptr;
    ++generation_;
  }
  start_cv_.notify_all();

  std::exception_ptr first;
  try {
    task(0);
  } catch (...) {
    first = std::current_exception();
  }

  std::unique_lock lock(mutex_);
  done_cv_.wait(lock, [&] { return pending_ == 0; });
  task_ = nullptr;
  if (first) std::rethrow_exception(first);
  for (const auto& e : errors_) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace swarmcit
