#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace swarmcit {

// Fork-join pool with a fixed number of blocks. run(task) calls task(b) for
// every block b in [0, size()) -- block 0 on the calling thread -- and returns
// once all have finished. The first exception (lowest block index) is
// rethrown on the caller.
class WorkerPool {
 public:
  explicit WorkerPool(int workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int size() const { return workers_; }

  void run(const std::function<void(int)>& task);

 private:
  void loop(int block);

  int workers_;
  std::vector<std::jthread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(int)>* task_ = nullptr;
  std::vector<std::exception_ptr> errors_;
  std::uint64_t generation_ = 0;
  int pending_ = 0;
  bool stopping_ = false;
};

}  // namespace swarmcit
