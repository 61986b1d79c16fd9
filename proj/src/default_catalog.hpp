// Copyright 2026 The sandmine authors
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

#ifndef SANDMINE_DEFAULT_CATALOG_HPP
#define SANDMINE_DEFAULT_CATALOG_HPP

namespace sandmine {

// Built-in copy of data/catalog.txt. Keep the two in sync; a test checks.
inline constexpr const char* kDefaultCatalogText = R"(# Default sensitive-API catalog.
# One entry per line: <ApiId> <source|sink|both|sensitive>.

# Device and subscriber identity
getDeviceId source
getSubscriberId source
getSimSerialNumber source
getLine1Number source

# Location
getLastKnownLocation source
getCellLocation source

# Network state
getMacAddress source
getConnectionInfo source

# Installed software and content providers
getInstalledPackages source
query source

# Messaging
sendSMS sink
sendTextMessage sink
sendBroadcast sink

# Network egress
httpSend sink
openConnection sink
writeToSocket sink
loadUrl sink

# Read-write channels
transceive both

# Privileged operations without a dataflow role
setWifiEnabled sensitive
killBackgroundProcesses sensitive
vibrate sensitive
)";

}  // namespace sandmine

#endif  // SANDMINE_DEFAULT_CATALOG_HPP
