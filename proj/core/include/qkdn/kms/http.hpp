#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "qkdn/kms/client.hpp"

namespace qkdn::kms {

class TransportError : public Error {
 public:
  using Error::Error;
};

/// Serves a KeyManagementService over HTTP:
///
///   GET  /api/v1/keys/{slave_SAE_ID}/enc_keys?number=N&size=256
///   POST /api/v1/keys/{master_SAE_ID}/dec_keys   body: key IDs
///   POST /admin/v1/links   body: {"sae_a":..,"sae_b":..,"count":..}
///
/// The calling SAE is named by the `X-SAE-ID` request header, standing in for
/// the TLS client identity a production KME would use.
class KmsHttpServer {
 public:
  explicit KmsHttpServer(KeyManagementService& service);
  ~KmsHttpServer();
  KmsHttpServer(const KmsHttpServer&) = delete;
  KmsHttpServer& operator=(const KmsHttpServer&) = delete;

  /// Binds and starts serving on a background thread. Port 0 picks a free
  /// port; the bound port is returned.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class HttpKmsClient final : public KmsClient {
 public:
  HttpKmsClient(std::string host, int port);
  ~HttpKmsClient() override;

  /// Parses "host:port".
  static std::unique_ptr<HttpKmsClient> from_address(const std::string& address);

  std::vector<QkdKey> get_enc_keys(const SaeId& master, const SaeId& slave, int number,
                                   int size_bits = kSupportedKeyBits) override;
  std::vector<QkdKey> get_dec_keys(const SaeId& slave, const SaeId& master,
                                   std::span<const KeyId> key_ids) override;
  void provision_link(const SaeId& sae_a, const SaeId& sae_b, std::size_t count) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qkdn::kms
