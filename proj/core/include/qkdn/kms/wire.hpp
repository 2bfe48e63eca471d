#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qkdn/kms/key_store.hpp"

/// ETSI GS QKD 014 JSON bodies.
///
///   Key container:  {"keys":[{"key_ID":"<uuid>","key":"<base64>"}]}
///   Key IDs:        {"key_IDs":[{"key_ID":"<uuid>"}]}
///   Error:          {"message":"<text>","details":[{"error_kind":"<Kind>"}]}
///
/// Base64 uses the standard alphabet with padding. Serialization is compact
/// and member order is fixed as shown, so bodies are byte-stable.
namespace qkdn::kms::wire {

class MalformedBody : public Error {
 public:
  using Error::Error;
};

enum class ErrorKind { kUnsupportedSize, kMalformed, kUnknownLink, kUnknownKeyId, kExhausted };

struct ErrorBody {
  ErrorKind kind;
  std::string message;
};

std::string base64_encode(ByteView bytes);
Bytes base64_decode(std::string_view text);

std::string encode_key_container(const std::vector<QkdKey>& keys);
std::vector<QkdKey> decode_key_container(std::string_view json);

std::string encode_key_ids(const std::vector<KeyId>& ids);
std::vector<KeyId> decode_key_ids(std::string_view json);

std::string encode_error(const ErrorBody& err);
ErrorBody decode_error(std::string_view json);

std::string_view kind_name(ErrorKind kind);
int http_status(ErrorKind kind);

/// Classifies a library exception into its wire error.
ErrorBody classify(const std::exception& e);

/// Re-raises the typed exception a wire error stands for.
[[noreturn]] void rethrow(const ErrorBody& err);

}  // namespace qkdn::kms::wire
