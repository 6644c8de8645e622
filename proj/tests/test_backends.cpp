#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "corr2cause/backends/factory.hpp"

using namespace c2c;

// symbolic

TEST(SymbolicBackend, SubQ1) {
  auto a = SymbolicBackend::solve(
      "Premise: Suppose there is a closed system of 3 variables, A, B and C. All the statistical relations among these 3 "
      "variables are as follows: A correlates with C. B correlates with C. However, A is independent of B. Can you "
      "initialize the PC algorithm with a fully connected undirected graph?");
  EXPECT_EQ(a.answer, "(A,B), (A,C), (B,C)");
}

TEST(SymbolicBackend, SubQ8DirectedVersusUndirected) {
  const std::string keep =
      " Keep in mind that directed edges, for example A -> B, are different from undirected edges, for example (A,B).";
  auto q = [&](const std::string& g, const std::string& h) {
    return "Given the inferred final causal graph: " + g + ". Can you infer if the Hypothesis \"" + h + "\" is True or False?" + keep;
  };
  EXPECT_EQ(SymbolicBackend::solve(q("A -> C, B -> C", "B directly affects C.")).answer, "1");
  EXPECT_EQ(SymbolicBackend::solve(q("(A,B), (A,E), (B,C), (C,D)", "B directly affects C.")).answer, "0");
  EXPECT_EQ(SymbolicBackend::solve(q("A -> C, B -> C", "A and B together cause some other variable(s).")).answer, "1");
  EXPECT_EQ(SymbolicBackend::solve(q("A -> B, B -> C", "A influences C through some mediator(s).")).answer, "1");
  EXPECT_EQ(SymbolicBackend::solve(q("(A,B), (B,C)", "Some variable(s) cause both A and C.")).answer, "0");
}

TEST(SymbolicBackend, DeterministicAndContractBound) {
  SymbolicBackend s;
  CompletionRequest req{"Question: Given the undirected graph: (A,B), (B,C). Can you find all paths of length 2?\nReasoning:",
                        {"Answer:"}, 100, 0.0};
  const auto a = s.complete(req).text;
  EXPECT_EQ(a, s.complete(req).text);
  EXPECT_EQ(a.find("Answer:"), std::string::npos);
  req.prompt += a + "\nAnswer:";
  EXPECT_EQ(trim(s.complete(req).text), "(A,B,C)");
  EXPECT_THROW(SymbolicBackend::solve("Given the graph, what now?"), ContractError);
  EXPECT_THROW(s.complete({"x", {}, 0, 0.0}), ArgumentError);
  EXPECT_THROW(s.complete({"x", {}, 10, -1.0}), ArgumentError);
  EXPECT_TRUE(s.healthcheck().ok);
}

TEST(Backend, TruncateAtStop) {
  EXPECT_EQ(truncate_at_stop("abc\nQuestion: x", {"\nQuestion:", "zzz"}), "abc");
  EXPECT_EQ(truncate_at_stop("a b c", {"c", "b"}), "a ");
  EXPECT_EQ(truncate_at_stop("abc", {}), "abc");
}

// config

TEST(Config, ParsesAndValidates) {
  auto c = BackendConfig::parse("[backend]\nkind = \"remote\"\nendpoint = \"http://localhost:1\"\nmodel = \"m\"\n[retry]\nmax_attempts = 2\n");
  EXPECT_EQ(c.kind, "remote");
  EXPECT_EQ(c.retry.max_attempts, 2);
  EXPECT_EQ(c.temperature, 0.0);
  EXPECT_EQ(BackendConfig::parse("").kind, "symbolic");
  EXPECT_THROW(BackendConfig::parse("[backend]\nkind = \"oracle\""), ConfigError);
  EXPECT_THROW(BackendConfig::parse("[backend]\nkind = \"remote\""), ConfigError);
  EXPECT_THROW(BackendConfig::parse("[backend\nkind = 1"), ConfigError);
  EXPECT_THROW(BackendConfig::parse("[backend]\nconcurrency = 0"), ConfigError);
  EXPECT_THROW(BackendConfig::parse("[retry]\nbackoff_multiplier = 0.5"), ConfigError);
  EXPECT_EQ(BackendConfig::load(std::string(C2C_SAMPLES_DIR) + "/cfg.toml").model, "gpt-4o-mini");
  EXPECT_THROW(BackendConfig::load("/nonexistent/cfg.toml"), Error);
}

TEST(Config, EndpointParsing) {
  auto e = Endpoint::parse("http://localhost:8080");
  EXPECT_EQ(e.origin, "http://localhost:8080");
  EXPECT_EQ(e.path, "/v1/chat/completions");
  EXPECT_EQ(Endpoint::parse("https://h/v2/chat").path, "/v2/chat");
  EXPECT_THROW(Endpoint::parse("ftp://h"), ConfigError);
  EXPECT_THROW(Endpoint::parse("localhost"), ConfigError);
}

TEST(Config, FactoryPicksBackend) {
  BackendConfig c;
  EXPECT_EQ(make_backend(c)->name(), "symbolic");
  c.kind = "remote";
  c.endpoint = "http://127.0.0.1:9";
  c.model = "m";
  EXPECT_EQ(make_backend(c)->name(), "remote:m");
}

TEST(PromptHash, StableFnv) {
  EXPECT_EQ(prompt_hash(""), "cbf29ce484222325");
  EXPECT_EQ(prompt_hash("a"), "af63dc4c8601ec8c");
  EXPECT_NE(prompt_hash("ab"), prompt_hash("ba"));
}

// remote, against a local mock server

namespace {

std::string ok_body(const std::string& text) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}},
                        {"usage", {{"prompt_tokens", 7}, {"completion_tokens", 3}}}}
      .dump();
}

class MockServer {
 public:
  explicit MockServer(std::function<void(const httplib::Request&, httplib::Response&)> h) {
    server_.Post("/v1/chat/completions", [this, h](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      last_body = req.body;
      last_auth = req.get_header_value("Authorization");
      h(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::atomic<int> hits{0};
  std::string last_body, last_auth;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

struct Remote {
  std::vector<std::string> logs;
  std::vector<long> sleeps;
  std::mutex mu;

  std::unique_ptr<RemoteBackend> make(const std::string& url, int attempts = 3, int concurrency = 4, bool verbose = false) {
    setenv("C2C_TEST_KEY", "sk-test", 1);
    BackendConfig c;
    c.kind = "remote";
    c.endpoint = url;
    c.model = "test-model";
    c.api_key_env = "C2C_TEST_KEY";
    c.timeout_seconds = 5;
    c.concurrency = concurrency;
    c.verbose = verbose;
    c.retry.max_attempts = attempts;
    c.retry.initial_backoff_ms = 100;
    c.retry.max_backoff_ms = 250;
    return std::make_unique<RemoteBackend>(
        c,
        [this](const std::string& m) {
          std::lock_guard lk(mu);
          logs.push_back(m);
        },
        [this](std::chrono::milliseconds d) { sleeps.push_back(d.count()); });
  }
};

CompletionRequest req(const std::string& prompt = "hello") { return {prompt, {}, 16, 0.0}; }

}  // namespace

TEST(RemoteBackend, SuccessSendsChatRequest) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) { res.set_content(ok_body("42"), "application/json"); });
  Remote r;
  auto b = r.make(srv.url());
  auto c = b->complete(req("what is it"));
  EXPECT_EQ(c.text, "42");
  EXPECT_EQ(c.prompt_tokens, 7);
  EXPECT_EQ(c.completion_tokens, 3);
  EXPECT_EQ(srv.last_auth, "Bearer sk-test");
  auto body = nlohmann::json::parse(srv.last_body);
  EXPECT_EQ(body["model"], "test-model");
  EXPECT_EQ(body["messages"][0]["content"], "what is it");
  EXPECT_EQ(body["temperature"], 0.0);
  ASSERT_EQ(r.logs.size(), 1u);
  EXPECT_NE(r.logs[0].find(prompt_hash("what is it")), std::string::npos);
  EXPECT_EQ(r.logs[0].find("what is it"), std::string::npos);
}

TEST(RemoteBackend, UnauthorizedIsPermanent) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) {
    res.status = 401;
    res.set_content(R"({"error":{"message":"bad key"}})", "application/json");
  });
  Remote r;
  auto b = r.make(srv.url());
  try {
    b->complete(req());
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_FALSE(e.transient());
    EXPECT_EQ(e.status, 401);
    EXPECT_NE(std::string(e.what()).find("bad key"), std::string::npos);
  }
  EXPECT_EQ(srv.hits, 1);
  EXPECT_TRUE(r.sleeps.empty());
}

TEST(RemoteBackend, RetriesTransientThenSucceeds) {
  std::atomic<int> n{0};
  MockServer srv([&](const httplib::Request&, httplib::Response& res) {
    if (n++ < 2) {
      res.status = n == 1 ? 503 : 429;
      res.set_content("busy", "text/plain");
      return;
    }
    res.set_content(ok_body("ok"), "application/json");
  });
  Remote r;
  auto b = r.make(srv.url(), 4);
  EXPECT_EQ(b->complete(req()).text, "ok");
  EXPECT_EQ(srv.hits, 3);
  EXPECT_EQ(r.sleeps, (std::vector<long>{100, 200}));
}

TEST(RemoteBackend, GivesUpAfterMaxAttemptsWithCappedBackoff) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  Remote r;
  auto b = r.make(srv.url(), 4);
  EXPECT_THROW(b->complete(req()), BackendError);
  EXPECT_EQ(srv.hits, 4);
  EXPECT_EQ(r.sleeps, (std::vector<long>{100, 200, 250}));
}

TEST(RemoteBackend, WrongModelCarriesServerMessage) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) {
    res.status = 404;
    res.set_content(R"({"error":{"message":"The model `test-model` does not exist"}})", "application/json");
  });
  Remote r;
  auto b = r.make(srv.url());
  try {
    b->complete(req());
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_FALSE(e.transient());
    EXPECT_NE(std::string(e.what()).find("does not exist"), std::string::npos);
  }
  auto h = b->healthcheck();
  EXPECT_FALSE(h.ok);
  EXPECT_NE(h.message.find("404"), std::string::npos);
}

TEST(RemoteBackend, UnreachableIsTransportError) {
  int port = 0;
  {
    httplib::Server tmp;
    port = tmp.bind_to_any_port("127.0.0.1");
  }
  Remote r;
  auto b = r.make("http://127.0.0.1:" + std::to_string(port), 2);
  try {
    b->complete(req());
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_TRUE(e.transient());
    EXPECT_EQ(e.status, 0);
  }
  EXPECT_EQ(r.sleeps.size(), 1u);
  EXPECT_FALSE(b->healthcheck().ok);
}

TEST(RemoteBackend, MalformedResponseIsPermanent) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) { res.set_content("{\"choices\": []}", "application/json"); });
  Remote r;
  auto b = r.make(srv.url());
  EXPECT_THROW(b->complete(req()), BackendError);
  EXPECT_EQ(srv.hits, 1);
}

TEST(RemoteBackend, MissingKeyFailsBeforeSending) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) { res.set_content(ok_body("x"), "application/json"); });
  Remote r;
  auto b = r.make(srv.url());
  unsetenv("C2C_TEST_KEY");
  EXPECT_THROW(b->complete(req()), BackendError);
  EXPECT_EQ(srv.hits, 0);
}

TEST(RemoteBackend, StopSequencesCappedOnWireAndAppliedLocally) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) {
    res.set_content(ok_body("reasoning here STOP5 tail"), "application/json");
  });
  Remote r;
  auto b = r.make(srv.url());
  CompletionRequest q{"p", {"STOP1", "STOP2", "STOP3", "STOP4", "STOP5"}, 16, 0.0};
  EXPECT_EQ(b->complete(q).text, "reasoning here ");
  EXPECT_EQ(nlohmann::json::parse(srv.last_body)["stop"].size(), 4u);
}

TEST(RemoteBackend, CapsRequestsInFlight) {
  std::atomic<int> cur{0}, peak{0};
  MockServer srv([&](const httplib::Request&, httplib::Response& res) {
    const int now = ++cur;
    int p = peak.load();
    while (now > p && !peak.compare_exchange_weak(p, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(60));
    --cur;
    res.set_content(ok_body("x"), "application/json");
  });
  Remote r;
  auto b = r.make(srv.url(), 1, 2);
  std::vector<std::jthread> ts;
  for (int i = 0; i < 6; ++i) ts.emplace_back([&] { b->complete(req()); });
  ts.clear();
  EXPECT_EQ(srv.hits, 6);
  EXPECT_LE(peak.load(), 2);
  EXPECT_GE(peak.load(), 1);
}

TEST(RemoteBackend, VerboseLogsBodies) {
  MockServer srv([](const httplib::Request&, httplib::Response& res) { res.set_content(ok_body("visible"), "application/json"); });
  Remote r;
  auto b = r.make(srv.url(), 1, 1, true);
  b->complete(req());
  ASSERT_FALSE(r.logs.empty());
  EXPECT_NE(r.logs.back().find("visible"), std::string::npos);
}
