#include "dfab/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dfab/error.hpp"
#include "json.hpp"

namespace dfab {

namespace {

constexpr std::string_view kRestate =
    "Please restate your command to request a physical object.";

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Rejection reject(std::string_view text, std::string_view why) {
  return {std::string(text), std::string(why) + " " + std::string(kRestate)};
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '\'') {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace

std::string GuidedPrompt::render() const {
  std::ostringstream os;
  os << instruction;
  if (!few_shot_examples.empty()) {
    os << "\n\nExamples:";
    for (const auto& ex : few_shot_examples) {
      os << "\nInput: \"" << ex.input << "\" -> Response: \"" << ex.output << "\"";
    }
  }
  return os.str();
}

FilterOutcome filter_request(std::string_view text, LanguageModelClient& client,
                             const GuidedPrompt& prompt) {
  if (trim(text).empty()) return reject(text, "The request is empty.");
  if (trim(prompt.instruction).empty()) {
    throw Error(ErrorCode::config_violation, "guided prompt instruction is empty");
  }
  const std::string response = client.complete(prompt.render(), std::string(text));
  const auto phrase = trim(response);
  if (phrase.empty()) return reject(text, "The language model returned nothing.");
  if (phrase.size() > kMaxResponseLength) return reject(text, "The language model reply was too long.");
  if (std::any_of(phrase.begin(), phrase.end(), [](unsigned char c) { return std::iscntrl(c) != 0; })) {
    return reject(text, "The language model reply contained control characters.");
  }

  std::string normalized = lower(phrase);
  while (!normalized.empty() && (normalized.back() == '.' || normalized.back() == '"' ||
                                 normalized.back() == '\'')) {
    normalized.pop_back();
  }
  while (!normalized.empty() && (normalized.front() == '"' || normalized.front() == '\'')) {
    normalized.erase(normalized.begin());
  }
  if (normalized == "false") return reject(text, "No physical object was recognized.");
  return ObjectRequest{std::string(text), std::string(phrase)};
}

FallbackLexicon FallbackLexicon::defaults() {
  return {
      {"i would like", "i want", "i need", "make me", "assemble me", "build me", "give me", "create",
       "please", "can you", "could you", "a", "an", "the"},
      {"to", "for", "that", "which"},
      {"knowledge", "beauty", "memories", "memory", "love", "happiness", "joy", "peace", "freedom",
       "wisdom", "truth", "hope", "justice", "friendship", "time", "idea", "ideas", "something",
       "anything", "nothing", "everything"},
  };
}

FilterOutcome fallback_filter(std::string_view text, const FallbackLexicon& lexicon) {
  auto tokens = words(text);

  std::vector<std::vector<std::string>> scaffolds;
  for (const auto& s : lexicon.scaffolding) scaffolds.push_back(words(s));
  std::sort(scaffolds.begin(), scaffolds.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });

  std::size_t start = 0;
  for (bool stripped = true; stripped;) {
    stripped = false;
    for (const auto& s : scaffolds) {
      if (s.empty() || start + s.size() > tokens.size()) continue;
      if (std::equal(s.begin(), s.end(), tokens.begin() + static_cast<std::ptrdiff_t>(start))) {
        start += s.size();
        stripped = true;
        break;
      }
    }
  }

  std::size_t end = start;
  while (end < tokens.size() &&
         std::find(lexicon.clause_markers.begin(), lexicon.clause_markers.end(), tokens[end]) ==
             lexicon.clause_markers.end()) {
    ++end;
  }
  if (end == start) return reject(text, "No physical object was recognized.");

  const auto& head = tokens[end - 1];
  if (std::find(lexicon.abstract_heads.begin(), lexicon.abstract_heads.end(), head) !=
      lexicon.abstract_heads.end()) {
    return reject(text, "\"" + head + "\" is not a physical object.");
  }
  std::string phrase;
  for (std::size_t n = start; n < end; ++n) {
    if (!phrase.empty()) phrase += ' ';
    phrase += tokens[n];
  }
  return ObjectRequest{std::string(text), phrase};
}

MockMeshGenerator MockMeshGenerator::from_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) {
    throw Error(ErrorCode::client_unavailable, "cannot open mock manifest '" + manifest.string() + "'");
  }
  std::map<std::string, std::filesystem::path> entries;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& [phrase, path] : doc.items()) {
      std::filesystem::path p = path.get<std::string>();
      if (p.is_relative()) p = manifest.parent_path() / p;
      entries.emplace(lower(trim(phrase)), p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::schema_mismatch, std::string("mock manifest: ") + e.what());
  }
  return MockMeshGenerator(std::move(entries));
}

GeneratedMesh MockMeshGenerator::generate(const std::string& prompt) {
  const auto it = entries_.find(lower(trim(prompt)));
  if (it == entries_.end()) {
    throw Error(ErrorCode::client_unavailable, "mock generator has no mesh for '" + prompt + "'");
  }
  std::ifstream in(it->second, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::client_unavailable, "mock mesh file missing: " + it->second.string());
  }
  GeneratedMesh out;
  out.bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  out.format = format_from_extension(it->second);
  return out;
}

TriangleMesh acquire_mesh(const ObjectRequest& request, MeshGeneratorClient& client) {
  const auto generated = client.generate(request.extracted_phrase);
  return parse_mesh(std::string_view(generated.bytes), generated.format);
}

}  // namespace dfab
