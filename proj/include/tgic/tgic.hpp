#pragma once

#include "tgic/error.hpp"
#include "tgic/field.hpp"
#include "tgic/model.hpp"
#include "tgic/minrank.hpp"
#include "tgic/interaction.hpp"
#include "tgic/joint_extension.hpp"
#include "tgic/verify.hpp"
#include "tgic/codegen.hpp"
#include "tgic/oracle.hpp"
#include "tgic/io.hpp"
#include "tgic/random.hpp"
#include "tgic/corpus.hpp"
