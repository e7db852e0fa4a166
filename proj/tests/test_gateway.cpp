// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include "msb/gateway.hpp"
#include "support/helpers.hpp"

using namespace msb;
using msb::testing::TempDir;
using nlohmann::json;

namespace {

// Local OpenAI-shaped stub server for Record/Passthrough tests.
class StubServer {
 public:
  StubServer() {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   requests_ += 1;
                   last_auth_ = req.get_header_value("Authorization");
                   if (fail_with_ != 0) {
                     res.status = fail_with_;
                     return;
                   }
                   json body = json::parse(req.body);
                   const std::string prompt =
                       body.at("messages").at(0).at("content").at(0).at("text");
                   json out;
                   out["choices"] = json::array(
                       {{{"message",
                          {{"role", "assistant"},
                           {"content", "echo: " + prompt}}}}});
                   res.set_content(out.dump(), "application/json");
                 });
    server_.Post("/v1/embeddings",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   requests_ += 1;
                   json body = json::parse(req.body);
                   const std::string input = body.at("input").at(0);
                   // Fixed per-modality stub vectors:
                   // image inputs embed to (3,4), text inputs to (4,3).
                   std::vector<double> v = input.rfind("image:", 0) == 0
                                               ? std::vector<double>{3, 4}
                                               : std::vector<double>{4, 3};
                   json out;
                   out["data"] = json::array({{{"embedding", v}}});
                   res.set_content(out.dump(), "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1";
  }
  int requests() const { return requests_; }
  void fail_with(int status) { fail_with_ = status; }
  std::string last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  int fail_with_ = 0;
  std::string last_auth_;
};

EndpointConfig endpoint(const std::string& base_url, Role role = Role::kGenerator) {
  EndpointConfig ep;
  ep.role = role;
  ep.base_url = base_url;
  ep.model_name = "stub-model";
  ep.rate_limit_rpm = 100000.0;
  ep.retry.max_attempts = 2;
  ep.retry.backoff_base_seconds = 0.01;
  return ep;
}

}  // namespace

TEST_CASE("canonical request serialization is pinned") {
  CanonicalRequest req;
  req.role = "target";
  req.model = "m1";
  req.prompt = "hello";
  req.image = "img.png";
  req.temperature = 1.0;
  req.max_tokens = 256;
  CHECK(req.canonical_json() ==
        "{\"image\":\"img.png\",\"max_tokens\":256,\"model\":\"m1\","
        "\"prompt\":\"hello\",\"role\":\"target\",\"temperature\":\"1\"}");
  CHECK(req.digest() == req.digest());
  CHECK(req.digest().size() == 64);

  CanonicalRequest other = req;
  other.temperature = 0.5;
  CHECK(other.digest() != req.digest());
}

TEST_CASE("judge output parsing") {
  CHECK(parse_judge_output("unsafe", "label") == 1.0);
  CHECK(parse_judge_output("This is safe.", "label") == 0.0);
  CHECK(parse_judge_output("harmful: 0.85", "numeric") == 0.85);
  CHECK(parse_judge_output("harmful: 0.85", "auto") == 0.85);
  CHECK(parse_judge_output("UNSAFE", "auto") == 1.0);
  CHECK(parse_judge_output("harmless", "auto") == 0.0);
  CHECK_THROWS_AS(parse_judge_output("no verdict here", "auto"),
                  JudgeParseError);
  CHECK_THROWS_AS(parse_judge_output("0.85", "label"), JudgeParseError);
  CHECK_THROWS_AS(parse_judge_output("unsafe", "numeric"), JudgeParseError);
  CHECK_THROWS_AS(parse_judge_output("x", "bogus-adapter"), ConfigError);
}

TEST_CASE("record mode stores cache files keyed by digest") {
  StubServer server;
  TempDir dir("msb-cache-record");
  ModelGateway gateway(dir.str(), CacheMode::kRecord);
  EndpointConfig ep = endpoint(server.base_url());

  const std::string out = gateway.chat(ep, "ping", "");
  CHECK(out == "echo: ping");
  CHECK(server.requests() == 1);

  CanonicalRequest req;
  req.role = to_string(ep.role);
  req.model = ep.model_name;
  req.prompt = "ping";
  req.temperature = ep.temperature;
  req.max_tokens = ep.max_tokens;
  CHECK(std::filesystem::exists(
      std::filesystem::path(dir.str()) / (req.digest() + ".json")));

  // Second identical call is served from the cache, not the network.
  CHECK(gateway.chat(ep, "ping", "") == "echo: ping");
  CHECK(server.requests() == 1);
}

TEST_CASE("replay mode never touches the network") {
  StubServer server;
  TempDir dir("msb-cache-replay");
  EndpointConfig ep = endpoint(server.base_url());
  {
    ModelGateway recorder(dir.str(), CacheMode::kRecord);
    recorder.chat(ep, "recorded question", "");
  }
  const int before = server.requests();

  ModelGateway replayer(dir.str(), CacheMode::kReplay);
  CHECK(replayer.chat(ep, "recorded question", "") == "echo: recorded question");
  CHECK(server.requests() == before);

  // A miss is a CacheError naming the digest, never a live call.
  try {
    replayer.chat(ep, "never recorded", "");
    FAIL("expected CacheError");
  } catch (const CacheError& e) {
    CanonicalRequest req;
    req.role = to_string(ep.role);
    req.model = ep.model_name;
    req.prompt = "never recorded";
    req.temperature = ep.temperature;
    req.max_tokens = ep.max_tokens;
    CHECK(std::string(e.what()).find(req.digest()) != std::string::npos);
  }
  CHECK(server.requests() == before);
}

TEST_CASE("server errors exhaust retries into GatewayError") {
  StubServer server;
  server.fail_with(500);
  TempDir dir("msb-cache-err");
  ModelGateway gateway(dir.str(), CacheMode::kPassthrough);
  EndpointConfig ep = endpoint(server.base_url());
  CHECK_THROWS_AS(gateway.chat(ep, "q", ""), GatewayError);
  CHECK(server.requests() == ep.retry.max_attempts);

  server.fail_with(403);  // client errors do not retry
  const int before = server.requests();
  CHECK_THROWS_AS(gateway.chat(ep, "q2", ""), GatewayError);
  CHECK(server.requests() == before + 1);
}

TEST_CASE("bearer token comes from the named env var") {
  StubServer server;
  TempDir dir("msb-cache-auth");
  ModelGateway gateway(dir.str(), CacheMode::kPassthrough);
  EndpointConfig ep = endpoint(server.base_url());
  ep.auth_ref = "MSB_TEST_API_KEY";
  setenv("MSB_TEST_API_KEY", "sekrit-token", 1);
  gateway.chat(ep, "authorized", "");
  unsetenv("MSB_TEST_API_KEY");
  CHECK(server.last_auth() == "Bearer sekrit-token");
}

TEST_CASE("joint embedding is the normalized concatenation") {
  StubServer server;
  TempDir dir("msb-cache-embed");
  ModelGateway gateway(dir.str(), CacheMode::kRecord);
  EndpointConfig ep = endpoint(server.base_url(), Role::kEmbedder);

  Embedding joint = gateway.embed(ep, "img.png", "hello");
  REQUIRE(joint.dim() == 4);
  // image (3,4) then text (4,3), all over sqrt(9+16+16+9) = sqrt(50)
  const double norm = std::sqrt(50.0);
  CHECK(joint.vector()[0] == doctest::Approx(3.0 / norm));
  CHECK(joint.vector()[1] == doctest::Approx(4.0 / norm));
  CHECK(joint.vector()[2] == doctest::Approx(4.0 / norm));
  CHECK(joint.vector()[3] == doctest::Approx(3.0 / norm));
  CHECK(joint.norm() == doctest::Approx(1.0));

  // Absent image fills its slot with zeros.
  Embedding text_only = gateway.embed(ep, "", "hello");
  REQUIRE(text_only.dim() == 4);
  CHECK(text_only.vector()[0] == 0.0);
  CHECK(text_only.vector()[1] == 0.0);
  CHECK(text_only.vector()[2] == doctest::Approx(4.0 / 5.0));
  CHECK(text_only.vector()[3] == doctest::Approx(3.0 / 5.0));

  // Replay of the same pair is bit-identical.
  ModelGateway replayer(dir.str(), CacheMode::kReplay);
  Embedding again = replayer.embed(ep, "img.png", "hello");
  CHECK(again.vector() == joint.vector());
}

TEST_CASE("token bucket throttles successive requests") {
  StubServer server;
  TempDir dir("msb-cache-rate");
  ModelGateway gateway(dir.str(), CacheMode::kPassthrough);
  EndpointConfig ep = endpoint(server.base_url());
  ep.rate_limit_rpm = 600.0;  // 10 per second -> 0.1 s between requests

  const auto start = std::chrono::steady_clock::now();
  gateway.chat(ep, "r1", "");
  gateway.chat(ep, "r2", "");
  gateway.chat(ep, "r3", "");
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  // First request is free; the next two wait for tokens.
  CHECK(elapsed >= 0.15);
}
