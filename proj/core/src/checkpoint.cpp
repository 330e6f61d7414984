// Copyright 2026 The backrank Authors
// SPDX-License-Identifier: Apache-2.0

#include "backrank/model/checkpoint.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "backrank/corpus/keyvalue.hpp"
#include "backrank/error.hpp"
#include "backrank/num/snapshot.hpp"

namespace backrank::model {

std::string Checkpoint::meta_value(std::string_view key, std::string_view fallback) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return std::string(fallback);
}

bool apply_backpack_key(BackpackConfig& c, std::string_view key, std::string_view value) {
  using corpus::parse_number;
  auto size = [&](std::size_t& field) { field = parse_number<std::size_t>(key, value); };
  if (key == "vocab_size") size(c.vocab_size);
  else if (key == "embed_dim") size(c.embed_dim);
  else if (key == "num_senses") size(c.num_senses);
  else if (key == "sense_hidden") size(c.sense_hidden);
  else if (key == "context_dim") size(c.context_dim);
  else if (key == "context_layers") size(c.context_layers);
  else if (key == "context_heads") size(c.context_heads);
  else if (key == "ffn_hidden") size(c.ffn_hidden);
  else if (key == "head_hidden") size(c.head_hidden);
  else if (key == "max_seq_len") size(c.max_seq_len);
  else if (key == "sep_token") size(c.sep_token);
  else if (key == "causal") c.causal = corpus::parse_bool(key, value);
  else if (key == "pooling") c.pooling = parse_pooling(value);
  else return false;
  return true;
}

std::vector<std::pair<std::string, std::string>> backpack_config_entries(const BackpackConfig& c) {
  return {
      {"vocab_size", std::to_string(c.vocab_size)},
      {"embed_dim", std::to_string(c.embed_dim)},
      {"num_senses", std::to_string(c.num_senses)},
      {"sense_hidden", std::to_string(c.sense_hidden)},
      {"context_dim", std::to_string(c.context_dim)},
      {"context_layers", std::to_string(c.context_layers)},
      {"context_heads", std::to_string(c.context_heads)},
      {"ffn_hidden", std::to_string(c.ffn_hidden)},
      {"head_hidden", std::to_string(c.head_hidden)},
      {"max_seq_len", std::to_string(c.max_seq_len)},
      {"sep_token", std::to_string(c.sep_token)},
      {"causal", c.causal ? "true" : "false"},
      {"pooling", pooling_name(c.pooling)},
  };
}

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

void put_string(std::ostream& out, std::string_view s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
 public:
  Reader(std::istream& in, const std::string& source) : in_(in), source_(source) {}

  template <typename T>
  T get(const char* what) {
    T value{};
    const auto at = offset();
    if (!in_.read(reinterpret_cast<char*>(&value), sizeof(T))) {
      throw ParseError(source_, at, fmt::format("truncated checkpoint ({})", what));
    }
    return value;
  }

  std::string bytes(std::size_t n, const char* what) {
    const auto at = offset();
    if (n > (1ULL << 30)) throw ParseError(source_, at, fmt::format("implausible length for {}", what));
    std::string s(n, '\0');
    if (!in_.read(s.data(), static_cast<std::streamsize>(n))) {
      throw ParseError(source_, at, fmt::format("truncated checkpoint ({})", what));
    }
    return s;
  }

  std::string string(const char* what) { return bytes(get<std::uint32_t>(what), what); }

  std::size_t offset() const { return static_cast<std::size_t>(in_.tellg()); }
  std::istream& stream() { return in_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  const std::string& source_;
};

}  // namespace

void write_checkpoint(std::ostream& out, const Backpack& model, const corpus::Vocab& vocab, const Metadata& meta) {
  if (vocab.size() != model.config().vocab_size) {
    throw DomainError(fmt::format("vocabulary has {} tokens, model expects {}", vocab.size(),
                                  model.config().vocab_size));
  }
  std::string header;
  for (const auto& [k, v] : backpack_config_entries(model.config())) header += fmt::format("{} = {}\n", k, v);
  for (const auto& [k, v] : meta) {
    if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos) {
      throw DomainError(fmt::format("metadata key '{}' cannot be stored", k));
    }
    header += fmt::format("meta.{} = {}\n", k, v);
  }
  out.write(kCheckpointMagic.data(), static_cast<std::streamsize>(kCheckpointMagic.size()));
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  put<std::uint64_t>(out, vocab.size());
  for (const auto& tok : vocab.tokens()) put_string(out, tok);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(model.parameters().size()));
  for (const auto& p : model.parameters()) {
    put_string(out, p.name);
    num::write_tensor(out, p.value);
  }
}

void save_checkpoint(const std::filesystem::path& path, const Backpack& model, const corpus::Vocab& vocab,
                     const Metadata& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  write_checkpoint(out, model, vocab, meta);
  if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

Checkpoint read_checkpoint(std::istream& in, const std::string& source) {
  Reader r(in, source);
  if (r.bytes(kCheckpointMagic.size(), "magic") != kCheckpointMagic) {
    throw ParseError(source, 0, "not a backrank checkpoint");
  }
  const auto version = r.get<std::uint32_t>("version");
  if (version != kCheckpointVersion) {
    throw ParseError(source, kCheckpointMagic.size(), fmt::format("unsupported checkpoint version {}", version));
  }
  const std::string header = r.bytes(r.get<std::uint64_t>("header length"), "header");

  BackpackConfig config;
  Metadata meta;
  std::istringstream lines(header);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "malformed checkpoint header line");
    const std::string key = corpus::trim(std::string_view(line).substr(0, eq));
    const std::string value = corpus::trim(std::string_view(line).substr(eq + 1));
    if (key.starts_with("meta.")) {
      meta.emplace_back(key.substr(5), value);
    } else if (!apply_backpack_key(config, key, value)) {
      throw ParseError(source, line_no, fmt::format("unknown checkpoint header key '{}'", key));
    }
  }

  const auto vocab_size = r.get<std::uint64_t>("vocabulary size");
  if (vocab_size != config.vocab_size) throw ParseError(source, r.offset(), "vocabulary size disagrees with header");
  std::vector<std::string> tokens;
  tokens.reserve(vocab_size);
  for (std::uint64_t i = 0; i < vocab_size; ++i) tokens.push_back(r.string("vocabulary token"));
  corpus::Vocab vocab = corpus::Vocab::from_tokens(std::move(tokens));

  Backpack model(config, 0);
  const auto count = r.get<std::uint32_t>("parameter count");
  if (count != model.parameters().size()) {
    throw ParseError(source, r.offset(), fmt::format("expected {} parameters, found {}", model.parameters().size(), count));
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::string name = r.string("parameter name");
    const std::size_t at = r.offset();
    const num::Tensor value = num::read_tensor(in, source.c_str());
    try {
      model.load_parameter(name, value);
    } catch (const std::exception& e) {
      throw ParseError(source, at, e.what());
    }
  }
  return Checkpoint{std::move(vocab), std::move(model), std::move(meta)};
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}' for reading", path.string()));
  return read_checkpoint(in, path.string());
}

}  // namespace backrank::model
