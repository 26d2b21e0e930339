"""
License:
--------
Copyright 2026 The uawork Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.


File description:
-----------------
Workbench configuration. Packaged defaults are read from config/workbench.yaml and can be overridden by a
user YAML file or by keyword overrides of the form section__key=value.

"""

import copy
import logging
import os
from dataclasses import dataclass, field

import yaml

from .errors import ConfigError

__all__ = ["WORKBENCH_CONFIG", "ALGEBRA_CORPUS_DIR", "WorkbenchConfig", "load_config", "default_config"]

logger = logging.getLogger(__name__)

WORKBENCH_CONFIG = os.path.join(os.path.dirname(__file__), "config", "workbench.yaml")
ALGEBRA_CORPUS_DIR = os.path.join(os.path.dirname(__file__), "config", "algebras")


@dataclass(frozen=True)
class WorkbenchConfig:
    """
    Immutable view over the merged configuration tree.
    """
    tree: dict = field(default_factory=dict)

    def get(self, section, key):
        """
        Returns a configuration value.

        :param str section: top-level section, e.g. "budget".
        :param str key: key inside the section.
        :return: configured value (a deep copy for mutable values).
        :raises ConfigError: if the section or key is missing.
        """
        try:
            return copy.deepcopy(self.tree[section][key])
        except KeyError:
            raise ConfigError("missing configuration value {}.{}".format(section, key))


def _merge(base, update, path=""):
    for key, value in update.items():
        if key not in base:
            raise ConfigError("unknown configuration key {}{}".format(path, key))
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError("configuration key {}{} must be a mapping".format(path, key))
            _merge(base[key], value, path + key + ".")
        else:
            base[key] = value


def _read_yaml(config_file):
    try:
        with open(config_file, "r") as fstream:
            conf_dict = yaml.safe_load(fstream)
    except OSError as e:
        raise ConfigError("cannot read configuration file {}: {}".format(config_file, e))
    except yaml.YAMLError as e:
        raise ConfigError("invalid YAML in {}: {}".format(config_file, e))
    if conf_dict is None:
        return {}
    if not isinstance(conf_dict, dict):
        raise ConfigError("configuration file {} must contain a mapping".format(config_file))
    return conf_dict


def load_config(config_file=None, **overrides):
    """
    Loads the packaged defaults and merges a user configuration over them.

    :param str config_file: optional path to a YAML file with a subset of the default keys.
    :param overrides: values keyed as section__key, e.g. budget__max_insertions=1000.
    :return: merged configuration.
    :rtype: WorkbenchConfig
    """
    tree = _read_yaml(WORKBENCH_CONFIG)
    if config_file is not None:
        _merge(tree, _read_yaml(config_file))
        logger.debug("merged configuration from %s", config_file)
    for name, value in overrides.items():
        if value is None:
            continue
        section, sep, key = name.partition("__")
        if not sep:
            raise ConfigError("override {} must be written as section__key".format(name))
        _merge(tree, {section: {key: value}})
    return WorkbenchConfig(tree)


_DEFAULT = None


def default_config():
    """
    Returns the packaged defaults, loaded once per process.
    """
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_config()
    return _DEFAULT
