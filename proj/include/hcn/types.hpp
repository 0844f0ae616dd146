// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hcn-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hcn {

template <typename Scalar>
using Point = Eigen::Matrix<Scalar, 2, 1>;

/// Planar position in meters; the macro BS sits at the origin.
using Position = Point<double>;

/// Base-station tier. Order is also the on-disk ordinal.
enum class BsKind { Mbs, Csbs, Rsbs, Hsbs };

enum class BsMode { Active, Sleep, Off };

/// Macro-macro, small-macro and small-small user.
enum class UserClass { Mmu, Smu, Ssu };

inline constexpr int kUnserved = -1;

std::string_view to_string(BsKind kind);
std::string_view to_string(BsMode mode);
std::string_view to_string(UserClass cls);

std::optional<BsKind> parse_bs_kind(std::string_view text);

class LayoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TransitionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class AllocationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hcn
