#include "connections/transport.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "connections/dataset.hpp"

namespace connections {

using nlohmann::json;

json build_chat_request(const std::vector<ChatMessage>& history, const ChatRequestParams& params) {
  json messages = json::array();
  for (const auto& m : history) {
    messages.push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  }
  json req{{"model", params.model}, {"messages", messages}, {"temperature", params.temperature}};
  if (params.seed) req["seed"] = *params.seed;
  return req;
}

std::string extract_reply(const json& response) {
  try {
    const auto& content = response.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw TransportError("response content is not a string", false);
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat response: ") + e.what(), false);
  }
}

json make_chat_response(const std::string& content, const std::string& model) {
  return {{"object", "chat.completion"},
          {"model", model},
          {"choices", json::array({{{"index", 0},
                                    {"message", {{"role", "assistant"}, {"content", content}}},
                                    {"finish_reason", "stop"}}})}};
}

std::string ChatTransport::send(const std::vector<ChatMessage>& history,
                                const ChatRequestParams& params) {
  return extract_reply(complete(build_chat_request(history, params)));
}

std::string send_with_retry(ChatTransport& transport, const std::vector<ChatMessage>& history,
                            const ChatRequestParams& params, const RetryPolicy& policy) {
  auto backoff = policy.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return transport.send(history, params);
    } catch (const TransportError& e) {
      if (!e.transient() || attempt >= policy.attempts) throw;
    }
    if (policy.sleep) {
      policy.sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    backoff = std::chrono::milliseconds(
        static_cast<std::chrono::milliseconds::rep>(static_cast<double>(backoff.count()) * policy.multiplier));
  }
}

ScriptedTransport::ScriptedTransport(std::vector<std::string> replies)
    : responder_([replies = std::move(replies), i = std::size_t{0}](const std::vector<ChatMessage>&) mutable {
        if (i >= replies.size()) throw TransportError("scripted transport has no more replies", false);
        return replies[i++];
      }) {}

ScriptedTransport::ScriptedTransport(Responder responder) : responder_(std::move(responder)) {}

json ScriptedTransport::complete(const json& request) {
  ++calls_;
  std::vector<ChatMessage> history;
  for (const auto& m : request.at("messages")) {
    history.push_back({parse_role(m.at("role").get<std::string>()).value_or(Role::User),
                       m.at("content").get<std::string>()});
  }
  return make_chat_response(responder_(history), request.value("model", ""));
}

json SessionFixture::to_json() const {
  json ex = json::array();
  for (const auto& e : exchanges) ex.push_back({{"request", e.request}, {"response", e.response}});
  return {{"format", kFormat}, {"exchanges", ex}};
}

SessionFixture SessionFixture::from_json(const json& j) {
  if (j.value("format", "") != kFormat) {
    throw std::runtime_error(std::string("session fixture format must be '") + kFormat + "'");
  }
  SessionFixture f;
  for (const auto& e : j.at("exchanges")) f.exchanges.push_back({e.at("request"), e.at("response")});
  return f;
}

SessionFixture SessionFixture::load(const std::filesystem::path& path) {
  return from_json(json::parse(read_text_file(path)));
}

void SessionFixture::save(const std::filesystem::path& path) const {
  write_text_file(path, to_json().dump(2) + "\n");
}

ReplayTransport::ReplayTransport(SessionFixture fixture, bool strict)
    : fixture_(std::move(fixture)), strict_(strict) {}

json ReplayTransport::complete(const json& request) {
  if (exhausted()) {
    throw TransportError("replay fixture exhausted after " + std::to_string(next_) + " exchanges", false);
  }
  const auto& ex = fixture_.exchanges[next_];
  if (strict_ && ex.request != request) {
    throw TransportError("replay diverged: request " + std::to_string(next_) +
                             " differs from the recorded request",
                         false);
  }
  ++next_;
  return ex.response;
}

json CapturingTransport::complete(const json& request) {
  auto response = inner_.complete(request);
  captured_.exchanges.push_back({request, response});
  return response;
}

RequestLimiter::RequestLimiter(int max_concurrent, std::chrono::milliseconds min_interval)
    : max_concurrent_(max_concurrent < 1 ? 1 : max_concurrent), min_interval_(min_interval) {}

RequestLimiter::Slot RequestLimiter::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < max_concurrent_; });
  ++in_flight_;
  auto now = std::chrono::steady_clock::now();
  auto start = std::max(now, next_start_);
  next_start_ = start + min_interval_;
  lock.unlock();
  if (start > now) std::this_thread::sleep_until(start);
  return Slot(*this);
}

void RequestLimiter::release() {
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

int RequestLimiter::in_flight() const {
  std::lock_guard lock(mu_);
  return in_flight_;
}

RequestLimiter::Slot::~Slot() {
  if (owner_) owner_->release();
}

HttpChatTransport::HttpChatTransport(HttpTransportConfig config, std::shared_ptr<RequestLimiter> limiter)
    : config_(std::move(config)), limiter_(std::move(limiter)) {}

json HttpChatTransport::complete(const json& request) {
  std::optional<RequestLimiter::Slot> slot;
  if (limiter_) slot.emplace(limiter_->acquire());

  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  auto res = client.Post(config_.path, headers, request.dump(), "application/json");
  if (!res) {
    throw TransportError("HTTP request failed: " + httplib::to_string(res.error()), true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("HTTP " + std::to_string(res->status) + " from chat endpoint", true);
  }
  if (res->status != 200) {
    throw TransportError("HTTP " + std::to_string(res->status) + " from chat endpoint: " + res->body, false);
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw TransportError(std::string("chat endpoint returned invalid JSON: ") + e.what(), false);
  }
}

}  // namespace connections
