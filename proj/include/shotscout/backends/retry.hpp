#pragma once
// Transport retry policy: 3 attempts, exponential backoff starting at 1 s,
// retrying only Error kinds marked retryable.

#include <chrono>
#include <functional>
#include <memory>
#include <thread>

#include "shotscout/backends/interfaces.hpp"

namespace shotscout::backends {

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds base_delay{1000};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

inline Sleeper real_sleeper() {
    return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

template <typename F>
auto with_retries(const RetryPolicy& policy, const Sleeper& sleep, F&& fn) {
    std::chrono::milliseconds delay = policy.base_delay;
    for (int attempt = 1;; ++attempt) {
        try {
            return fn();
        } catch (const Error& e) {
            if (!e.retryable() || attempt >= policy.attempts) throw;
        }
        sleep(delay);
        delay *= 2;
    }
}

class RetryingChat : public ChatBackend {
public:
    RetryingChat(std::shared_ptr<ChatBackend> inner, RetryPolicy policy = {},
                 Sleeper sleeper = real_sleeper())
        : inner_(std::move(inner)), policy_(policy), sleeper_(std::move(sleeper)) {}

    std::string chat(const ChatRequest& req) override {
        return with_retries(policy_, sleeper_, [&] { return inner_->chat(req); });
    }

private:
    std::shared_ptr<ChatBackend> inner_;
    RetryPolicy policy_;
    Sleeper sleeper_;
};

} // namespace shotscout::backends
