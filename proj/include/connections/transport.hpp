#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "connections/transcript.hpp"

namespace connections {

class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& what, bool transient)
      : std::runtime_error(what), transient_(transient) {}
  // Transient errors (timeouts, 429, 5xx) may be retried.
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

struct ChatRequestParams {
  std::string model;
  double temperature = 0.0;
  std::optional<std::int64_t> seed;
};

// Chat-completions request body: {"model", "messages", "temperature", "seed"}.
nlohmann::json build_chat_request(const std::vector<ChatMessage>& history,
                                  const ChatRequestParams& params);
// choices[0].message.content. Throws a non-transient TransportError when the
// body does not have that shape.
std::string extract_reply(const nlohmann::json& response);
// Minimal response body carrying `content` as the assistant message.
nlohmann::json make_chat_response(const std::string& content, const std::string& model = "");

// Boundary to a chat model. Implementations exchange JSON bodies; send()
// wraps the request/response plumbing.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual nlohmann::json complete(const nlohmann::json& request) = 0;

  std::string send(const std::vector<ChatMessage>& history, const ChatRequestParams& params);
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread::sleep_for
};

// Retries transient TransportErrors with exponential backoff; rethrows the
// last error when attempts run out. Non-transient errors are not retried.
std::string send_with_retry(ChatTransport& transport, const std::vector<ChatMessage>& history,
                            const ChatRequestParams& params, const RetryPolicy& policy);

// Replies produced by a callback or a fixed list. For tests.
class ScriptedTransport : public ChatTransport {
 public:
  using Responder = std::function<std::string(const std::vector<ChatMessage>& history)>;

  explicit ScriptedTransport(std::vector<std::string> replies);
  explicit ScriptedTransport(Responder responder);

  nlohmann::json complete(const nlohmann::json& request) override;
  std::size_t calls() const { return calls_; }

 private:
  Responder responder_;
  std::size_t calls_ = 0;
};

struct Exchange {
  nlohmann::json request;
  nlohmann::json response;
};

// One recorded session: ordered request/response pairs.
struct SessionFixture {
  static constexpr const char* kFormat = "connections-session/1";
  std::vector<Exchange> exchanges;

  nlohmann::json to_json() const;
  static SessionFixture from_json(const nlohmann::json& j);
  static SessionFixture load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

// Serves recorded responses in order. In strict mode each request must equal
// the recorded one, so a diverging solver fails loudly instead of receiving
// answers meant for another conversation.
class ReplayTransport : public ChatTransport {
 public:
  explicit ReplayTransport(SessionFixture fixture, bool strict = true);

  nlohmann::json complete(const nlohmann::json& request) override;
  std::size_t position() const { return next_; }
  bool exhausted() const { return next_ >= fixture_.exchanges.size(); }

 private:
  SessionFixture fixture_;
  bool strict_;
  std::size_t next_ = 0;
};

// Records every exchange that passes through `inner`.
class CapturingTransport : public ChatTransport {
 public:
  explicit CapturingTransport(ChatTransport& inner) : inner_(inner) {}

  nlohmann::json complete(const nlohmann::json& request) override;
  const SessionFixture& fixture() const { return captured_; }

 private:
  ChatTransport& inner_;
  SessionFixture captured_;
};

// Caps in-flight requests and spaces request starts; shared by every
// HttpChatTransport built from the same limiter.
class RequestLimiter {
 public:
  RequestLimiter(int max_concurrent, std::chrono::milliseconds min_interval);

  class Slot {
   public:
    explicit Slot(RequestLimiter& owner) : owner_(&owner) {}
    Slot(Slot&& other) noexcept : owner_(std::exchange(other.owner_, nullptr)) {}
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;
    Slot& operator=(Slot&&) = delete;
    ~Slot();

   private:
    RequestLimiter* owner_;
  };

  Slot acquire();
  int in_flight() const;

 private:
  void release();

  mutable std::mutex mu_;
  std::condition_variable cv_;
  int max_concurrent_;
  int in_flight_ = 0;
  std::chrono::milliseconds min_interval_;
  std::chrono::steady_clock::time_point next_start_{};
};

struct HttpTransportConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  // Name of the environment variable holding the bearer token. An unset
  // variable sends no Authorization header.
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::seconds timeout{120};
};

// Live chat-completions client.
class HttpChatTransport : public ChatTransport {
 public:
  HttpChatTransport(HttpTransportConfig config, std::shared_ptr<RequestLimiter> limiter = nullptr);

  nlohmann::json complete(const nlohmann::json& request) override;

 private:
  HttpTransportConfig config_;
  std::shared_ptr<RequestLimiter> limiter_;
};

}  // namespace connections
