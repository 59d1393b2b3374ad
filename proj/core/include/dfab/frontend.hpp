#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dfab/mesh_io.hpp"

namespace dfab {

/// A request that names a physical object.
struct ObjectRequest {
  std::string raw_text;
  std::string extracted_phrase;

  friend bool operator==(const ObjectRequest&, const ObjectRequest&) = default;
};

/// The input did not name a physical object; `message` asks the user to restate.
struct Rejection {
  std::string raw_text;
  std::string message;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

using FilterOutcome = std::variant<ObjectRequest, Rejection>;

inline constexpr std::string_view kDefaultInstruction =
    "Your task is to analyze the given text and determine whether it refers to a physical object "
    "or shape that is not an abstract idea. If it refers to something physical, return the "
    "relevant phrase that describes it; otherwise, respond with 'false.'";

inline constexpr std::size_t kMaxResponseLength = 200;

struct FewShotExample {
  std::string input;
  std::string output;
};

struct GuidedPrompt {
  std::string instruction{kDefaultInstruction};
  std::vector<FewShotExample> few_shot_examples{{"I need a shelf", "shelf"}, {"Knowledge", "false"}};

  /// Instruction followed by the worked examples, as sent to the model.
  std::string render() const;
};

/// A chat-style language model. Implementations throw
/// Error{client_unavailable} on timeout or transport failure.
class LanguageModelClient {
 public:
  virtual ~LanguageModelClient() = default;
  virtual std::string complete(const std::string& prompt, const std::string& user_text) = 0;
  virtual std::chrono::milliseconds timeout() const = 0;
};

/// Asks the model which object the text names. The phrase returned is the
/// model's reply with surrounding whitespace removed; a reply of "false"
/// (any case, optionally quoted or with a trailing period), an empty or
/// overlong reply, or one containing control characters is a Rejection.
FilterOutcome filter_request(std::string_view text, LanguageModelClient& client,
                             const GuidedPrompt& prompt = {});

struct FallbackLexicon {
  /// Leading phrases stripped from the request, longest match first.
  std::vector<std::string> scaffolding;
  /// Words that end the object phrase ("a box to hold ..." -> "box").
  std::vector<std::string> clause_markers;
  /// Heads that name no physical object.
  std::vector<std::string> abstract_heads;

  static FallbackLexicon defaults();
};

/// Offline keyword filter. Deterministic and total.
FilterOutcome fallback_filter(std::string_view text,
                              const FallbackLexicon& lexicon = FallbackLexicon::defaults());

struct GeneratedMesh {
  std::string bytes;
  std::optional<MeshFormat> format;  ///< unset lets parse_mesh detect it
};

/// A text-to-3D service. Implementations throw Error{client_unavailable}.
class MeshGeneratorClient {
 public:
  virtual ~MeshGeneratorClient() = default;
  virtual GeneratedMesh generate(const std::string& prompt) = 0;
};

/// Serves local files for known phrases.
class MockMeshGenerator : public MeshGeneratorClient {
 public:
  explicit MockMeshGenerator(std::map<std::string, std::filesystem::path> entries)
      : entries_(std::move(entries)) {}

  /// Manifest: JSON object of phrase -> mesh path, relative paths resolved
  /// against the manifest's directory.
  static MockMeshGenerator from_manifest(const std::filesystem::path& manifest);

  GeneratedMesh generate(const std::string& prompt) override;

 private:
  std::map<std::string, std::filesystem::path> entries_;
};

/// Parses the mesh a client produces for the request's phrase.
TriangleMesh acquire_mesh(const ObjectRequest& request, MeshGeneratorClient& client);

struct HttpClientSettings {
  std::string endpoint;  ///< full URL, http:// or https://
  std::string api_key;
  std::string model;
  std::chrono::milliseconds timeout{30000};
};

/// OpenAI-compatible chat completion endpoint. Reads DFAB_LLM_ENDPOINT,
/// DFAB_LLM_API_KEY, DFAB_LLM_MODEL and DFAB_LLM_TIMEOUT_MS.
class HttpLanguageModelClient : public LanguageModelClient {
 public:
  explicit HttpLanguageModelClient(HttpClientSettings settings) : settings_(std::move(settings)) {}
  static std::optional<HttpClientSettings> settings_from_env();

  std::string complete(const std::string& prompt, const std::string& user_text) override;
  std::chrono::milliseconds timeout() const override { return settings_.timeout; }

 private:
  HttpClientSettings settings_;
};

/// Synchronous text-to-mesh gateway: POSTs {"prompt": ...} and expects mesh
/// bytes back. The format comes from an X-Mesh-Format header, then the
/// Content-Type, then content detection. Reads DFAB_MESHGEN_ENDPOINT,
/// DFAB_MESHGEN_API_KEY and DFAB_MESHGEN_TIMEOUT_MS.
class HttpMeshGenerator : public MeshGeneratorClient {
 public:
  explicit HttpMeshGenerator(HttpClientSettings settings) : settings_(std::move(settings)) {}
  static std::optional<HttpClientSettings> settings_from_env();

  GeneratedMesh generate(const std::string& prompt) override;

 private:
  HttpClientSettings settings_;
};

}  // namespace dfab
