#include <gtest/gtest.h>

#include <thread>

#include "dfab/error.hpp"
#include "dfab/frontend.hpp"
#include "httplib.h"
#include "json.hpp"
#include "test_support.hpp"

namespace dfab {
namespace {

class ScriptedModel : public LanguageModelClient {
 public:
  explicit ScriptedModel(std::string reply) : reply_(std::move(reply)) {}
  std::string complete(const std::string& prompt, const std::string& user_text) override {
    last_prompt = prompt;
    last_text = user_text;
    ++calls;
    return reply_;
  }
  std::chrono::milliseconds timeout() const override { return std::chrono::milliseconds(100); }

  std::string last_prompt, last_text;
  int calls = 0;

 private:
  std::string reply_;
};

std::string phrase(const FilterOutcome& outcome) {
  if (const auto* r = std::get_if<ObjectRequest>(&outcome)) return r->extracted_phrase;
  return "<rejected>";
}

bool rejected(const FilterOutcome& outcome) { return std::holds_alternative<Rejection>(outcome); }

TEST(GuidedPrompt, RendersInstructionAndExamples) {
  const auto text = GuidedPrompt{}.render();
  EXPECT_EQ(text.rfind(std::string(kDefaultInstruction), 0), 0u);
  EXPECT_NE(text.find("I need a shelf"), std::string::npos);
  EXPECT_NE(text.find("Knowledge"), std::string::npos);
  EXPECT_NE(text.find("respond with 'false.'"), std::string::npos);
}

TEST(FilterRequest, ReturnsTrimmedModelReply) {
  ScriptedModel model("  shelf\n");
  const auto outcome = filter_request("I need a shelf", model);
  EXPECT_EQ(phrase(outcome), "shelf");
  EXPECT_EQ(std::get<ObjectRequest>(outcome).raw_text, "I need a shelf");
  EXPECT_EQ(model.last_text, "I need a shelf");
  EXPECT_EQ(model.last_prompt, GuidedPrompt{}.render());
}

TEST(FilterRequest, FalseMeansRejection) {
  for (const char* reply : {"false", "false.", "FALSE", " 'false.' ", "\"False\""}) {
    ScriptedModel model(reply);
    const auto outcome = filter_request("Knowledge", model);
    ASSERT_TRUE(rejected(outcome)) << reply;
    EXPECT_NE(std::get<Rejection>(outcome).message.find("restate"), std::string::npos);
  }
}

TEST(FilterRequest, KeepsModelCasing) {
  ScriptedModel model("Box");
  EXPECT_EQ(phrase(filter_request("I need a box to hold memories", model)), "Box");
}

TEST(FilterRequest, UnusableRepliesRejected) {
  for (const std::string reply : {std::string(), std::string("   "), std::string(201, 'x'),
                                  std::string("box\x01")}) {
    ScriptedModel model(reply);
    EXPECT_TRUE(rejected(filter_request("a box", model)));
  }
  ScriptedModel model("box");
  EXPECT_TRUE(rejected(filter_request("   ", model)));
  EXPECT_EQ(model.calls, 0);
}

TEST(FallbackFilter, ReferenceExamples) {
  EXPECT_EQ(phrase(fallback_filter("make me a coffee table")), "coffee table");
  EXPECT_EQ(phrase(fallback_filter("I want a simple stool")), "simple stool");
  EXPECT_TRUE(rejected(fallback_filter("create beauty")));
  EXPECT_TRUE(rejected(fallback_filter("Knowledge")));
  EXPECT_EQ(phrase(fallback_filter("I need a box to hold memories")), "box");
  EXPECT_EQ(phrase(fallback_filter("I need a shelf")), "shelf");
}

TEST(FallbackFilter, MoreShapes) {
  EXPECT_EQ(phrase(fallback_filter("Please, could you build me a Tall Tower!")), "tall tower");
  EXPECT_EQ(phrase(fallback_filter("chair")), "chair");
  EXPECT_EQ(phrase(fallback_filter("a shelf for books")), "shelf");
  EXPECT_TRUE(rejected(fallback_filter("I need something to hold memories")));
  EXPECT_TRUE(rejected(fallback_filter("")));
  EXPECT_TRUE(rejected(fallback_filter("make me a")));
  EXPECT_TRUE(rejected(fallback_filter("memories")));
}

TEST(FallbackFilter, LexiconIsConfigurable) {
  auto lexicon = FallbackLexicon::defaults();
  lexicon.abstract_heads.push_back("table");
  EXPECT_TRUE(rejected(fallback_filter("make me a coffee table", lexicon)));
  lexicon.abstract_heads.clear();
  EXPECT_EQ(phrase(fallback_filter("create beauty", lexicon)), "beauty");
}

TEST(FallbackFilter, Deterministic) {
  for (const char* text : {"make me a coffee table", "Knowledge", "x y z", "!!!"}) {
    EXPECT_EQ(fallback_filter(text), fallback_filter(text));
  }
}

TEST(MockMeshGenerator, ManifestLookup) {
  auto mock = MockMeshGenerator::from_manifest(testing::fixture_dir() / "mock_manifest.json");
  const auto mesh = acquire_mesh({"make me a coffee table", "Coffee Table "}, mock);
  EXPECT_FALSE(mesh.triangles.empty());
  try {
    mock.generate("spaceship");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::client_unavailable);
    EXPECT_NE(std::string(e.what()).find("spaceship"), std::string::npos);
  }
}

TEST(MockMeshGenerator, MissingManifest) {
  EXPECT_THROW(MockMeshGenerator::from_manifest(testing::fixture_dir() / "nope.json"), Error);
}

// Local stand-in for the remote services.
class LocalServer {
 public:
  explicit LocalServer(const std::function<void(httplib::Server&)>& routes) {
    routes(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  HttpClientSettings settings(const std::string& path) const {
    HttpClientSettings s;
    s.endpoint = "http://127.0.0.1:" + std::to_string(port_) + path;
    s.timeout = std::chrono::milliseconds(2000);
    return s;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

constexpr const char* kCubeObj =
    "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
    "f 1 3 2\nf 1 4 3\nf 5 6 7\nf 5 7 8\nf 1 2 6\nf 1 6 5\n"
    "f 2 3 7\nf 2 7 6\nf 3 4 8\nf 3 8 7\nf 4 1 5\nf 4 5 8\n";

TEST(HttpLanguageModelClient, ChatCompletionContract) {
  nlohmann::json seen;
  std::string auth;
  LocalServer server([&](httplib::Server& s) {
    s.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
      seen = nlohmann::json::parse(req.body);
      auth = req.get_header_value("Authorization");
      res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"coffee table"}}]})",
                      "application/json");
    });
  });
  auto settings = server.settings("/v1/chat");
  settings.api_key = "k123";
  settings.model = "m1";
  HttpLanguageModelClient client(settings);
  EXPECT_EQ(phrase(filter_request("make me a coffee table", client)), "coffee table");
  EXPECT_EQ(seen["messages"][0]["role"], "system");
  EXPECT_EQ(seen["messages"][0]["content"], GuidedPrompt{}.render());
  EXPECT_EQ(seen["messages"][1]["content"], "make me a coffee table");
  EXPECT_EQ(seen["temperature"], 0);
  EXPECT_EQ(seen["model"], "m1");
  EXPECT_EQ(auth, "Bearer k123");
}

TEST(HttpLanguageModelClient, FailuresAreClientUnavailable) {
  LocalServer server([](httplib::Server& s) {
    s.Post("/down", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
    s.Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("{\"choices\":[]}", "application/json");
    });
    s.Post("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      res.set_content("{}", "application/json");
    });
  });
  auto code = [](HttpClientSettings settings) {
    HttpLanguageModelClient client(settings);
    try {
      client.complete("p", "t");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::malformed_file;
  };
  EXPECT_EQ(code(server.settings("/down")), ErrorCode::client_unavailable);
  EXPECT_EQ(code(server.settings("/garbage")), ErrorCode::client_unavailable);
  auto slow = server.settings("/slow");
  slow.timeout = std::chrono::milliseconds(150);
  EXPECT_EQ(code(slow), ErrorCode::client_unavailable);
}

TEST(HttpMeshGenerator, ObjResponse) {
  std::string prompt;
  LocalServer server([&](httplib::Server& s) {
    s.Post("/mesh", [&](const httplib::Request& req, httplib::Response& res) {
      prompt = nlohmann::json::parse(req.body).at("prompt");
      res.set_content(kCubeObj, "model/obj");
    });
  });
  HttpMeshGenerator client(server.settings("/mesh"));
  const auto mesh = acquire_mesh({"a box", "box"}, client);
  EXPECT_EQ(prompt, "box");
  EXPECT_EQ(mesh.format_origin, MeshFormat::obj);
  EXPECT_EQ(mesh.triangles.size(), 12u);
}

TEST(HttpMeshGenerator, UnreachableEndpoint) {
  HttpClientSettings settings;
  {
    LocalServer server([](httplib::Server&) {});
    settings = server.settings("/mesh");
  }
  settings.timeout = std::chrono::milliseconds(300);
  HttpMeshGenerator client(settings);
  try {
    client.generate("box");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::client_unavailable);
  }
}

}  // namespace
}  // namespace dfab
