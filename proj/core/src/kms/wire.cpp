#include "qkdn/kms/wire.hpp"

#include <openssl/evp.h>

#include <json.hpp>

#include "qkdn/kms/uuid.hpp"

namespace qkdn::kms::wire {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::pair<ErrorKind, std::string_view>, 5> kKindNames{{
    {ErrorKind::kUnsupportedSize, "UnsupportedSize"},
    {ErrorKind::kMalformed, "Malformed"},
    {ErrorKind::kUnknownLink, "UnknownLink"},
    {ErrorKind::kUnknownKeyId, "UnknownKeyId"},
    {ErrorKind::kExhausted, "Exhausted"},
}};

ordered_json parse(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedBody(std::string("invalid JSON: ") + e.what());
  }
}

const ordered_json& member(const ordered_json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw MalformedBody(std::string("missing member \"") + name + "\"");
  }
  return obj.at(name);
}

std::string string_member(const ordered_json& obj, const char* name) {
  const auto& v = member(obj, name);
  if (!v.is_string()) throw MalformedBody(std::string("member \"") + name + "\" is not a string");
  return v.get<std::string>();
}

const ordered_json& array_member(const ordered_json& obj, const char* name) {
  const auto& v = member(obj, name);
  if (!v.is_array()) throw MalformedBody(std::string("member \"") + name + "\" is not an array");
  return v;
}

}  // namespace

std::string base64_encode(ByteView bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                          static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

Bytes base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw MalformedBody("base64 length is not a multiple of 4");
  std::size_t pad = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool alpha = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                 c == '+' || c == '/';
    if (c == '=') {
      if (i + 2 < text.size()) throw MalformedBody("misplaced base64 padding");
      ++pad;
    } else if (!alpha || pad > 0) {
      throw MalformedBody("invalid base64 character");
    }
  }
  Bytes out(3 * text.size() / 4);
  int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                          static_cast<int>(text.size()));
  if (n < 0) throw MalformedBody("invalid base64");
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

std::string encode_key_container(const std::vector<QkdKey>& keys) {
  ordered_json arr = ordered_json::array();
  for (const auto& k : keys) {
    ordered_json entry;
    entry["key_ID"] = k.key_id;
    entry["key"] = base64_encode(k.key.view());
    arr.push_back(std::move(entry));
  }
  ordered_json body;
  body["keys"] = std::move(arr);
  return body.dump();
}

std::vector<QkdKey> decode_key_container(std::string_view json) {
  auto body = parse(json);
  std::vector<QkdKey> keys;
  for (const auto& entry : array_member(body, "keys")) {
    QkdKey k;
    k.key_id = string_member(entry, "key_ID");
    Bytes material = base64_decode(string_member(entry, "key"));
    if (material.size() != crypto::SymKey::kSize) {
      throw MalformedBody("key material must be 32 bytes, got " + std::to_string(material.size()));
    }
    k.key = crypto::SymKey::from_bytes(material);
    keys.push_back(std::move(k));
  }
  return keys;
}

std::string encode_key_ids(const std::vector<KeyId>& ids) {
  ordered_json arr = ordered_json::array();
  for (const auto& id : ids) {
    ordered_json entry;
    entry["key_ID"] = id;
    arr.push_back(std::move(entry));
  }
  ordered_json body;
  body["key_IDs"] = std::move(arr);
  return body.dump();
}

std::vector<KeyId> decode_key_ids(std::string_view json) {
  auto body = parse(json);
  std::vector<KeyId> ids;
  for (const auto& entry : array_member(body, "key_IDs")) {
    auto id = string_member(entry, "key_ID");
    if (!is_uuid(id)) throw MalformedBody("key_ID is not a UUID: " + id);
    ids.push_back(std::move(id));
  }
  return ids;
}

std::string_view kind_name(ErrorKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "Malformed";
}

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnsupportedSize:
    case ErrorKind::kMalformed:
      return 400;
    case ErrorKind::kUnknownLink:
    case ErrorKind::kUnknownKeyId:
      return 404;
    case ErrorKind::kExhausted:
      return 503;
  }
  return 400;
}

std::string encode_error(const ErrorBody& err) {
  ordered_json detail;
  detail["error_kind"] = kind_name(err.kind);
  ordered_json body;
  body["message"] = err.message;
  body["details"] = ordered_json::array({detail});
  return body.dump();
}

ErrorBody decode_error(std::string_view json) {
  auto body = parse(json);
  ErrorBody err{ErrorKind::kMalformed, string_member(body, "message")};
  const auto& details = array_member(body, "details");
  if (!details.empty()) {
    auto name = string_member(details.front(), "error_kind");
    for (const auto& [k, n] : kKindNames) {
      if (n == name) err.kind = k;
    }
  }
  return err;
}

ErrorBody classify(const std::exception& e) {
  ErrorKind kind = ErrorKind::kMalformed;
  if (dynamic_cast<const UnsupportedSize*>(&e)) kind = ErrorKind::kUnsupportedSize;
  else if (dynamic_cast<const UnknownLink*>(&e)) kind = ErrorKind::kUnknownLink;
  else if (dynamic_cast<const UnknownKeyId*>(&e)) kind = ErrorKind::kUnknownKeyId;
  else if (dynamic_cast<const Exhausted*>(&e)) kind = ErrorKind::kExhausted;
  return {kind, e.what()};
}

void rethrow(const ErrorBody& err) {
  switch (err.kind) {
    case ErrorKind::kUnsupportedSize:
      throw UnsupportedSize(err.message);
    case ErrorKind::kUnknownLink:
      throw UnknownLink(err.message);
    case ErrorKind::kUnknownKeyId:
      throw UnknownKeyId(err.message);
    case ErrorKind::kExhausted:
      throw Exhausted(err.message);
    case ErrorKind::kMalformed:
      break;
  }
  throw InvalidArgument(err.message);
}

}  // namespace qkdn::kms::wire
