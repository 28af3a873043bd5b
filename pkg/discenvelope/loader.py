# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

from collections import OrderedDict
import os

import jsonref
import yaml

from .errors import LoadScenarioError


__all__ = ["ScenarioLoader"]

YAML_EXT = (".yaml", ".yml")


class ScenarioLoader(object):
    """
    Loads scenario files: JSON with ``$ref`` resolution, or YAML with
    ``!include`` tags. Shared domain definitions can live in their own
    files and be referenced from several scenarios.
    """
    def __init__(self, path=None):
        self.path = path

    def _yaml_include(self, loader, node):
        """
        Follows ``!include`` directives; JSON includes get their
        ``$ref``s resolved, other files are included as text.
        """
        base = os.path.dirname(getattr(loader, "name", "") or "")
        file_name = os.path.join(base, node.value)
        file_ext = os.path.splitext(file_name)[1]

        if file_ext == ".json":
            return self._parse_json(file_name, os.path.dirname(file_name))
        with open(file_name) as inputfile:
            if file_ext not in YAML_EXT:
                return inputfile.read()
            return yaml.load(inputfile, self._ordered_loader)

    def _parse_json(self, jsonfile, base_path):
        """
        Parses JSON and resolves every ``$ref`` relative to ``base_path``.
        """
        base_path = os.path.abspath(base_path)
        if not base_path.endswith("/"):
            base_path = base_path + "/"
        base_path = "file://" + base_path

        with open(jsonfile, "r") as f:
            try:
                return jsonref.load(f, base_uri=base_path, jsonschema=True,
                                    proxies=False,
                                    object_pairs_hook=OrderedDict)
            except (ValueError, jsonref.JsonRefError) as e:
                msg = "Error parsing scenario {0}: {1}".format(jsonfile, e)
                raise LoadScenarioError(msg)

    def _ordered_load(self, stream, loader=yaml.SafeLoader):
        """
        Preserves the key order of the scenario file.
        """
        class OrderedLoader(loader):
            pass

        def construct_mapping(loader, node):
            loader.flatten_mapping(node)
            return OrderedDict(loader.construct_pairs(node))
        OrderedLoader.add_constructor("!include", self._yaml_include)
        OrderedLoader.add_constructor(
            yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, construct_mapping)

        self._ordered_loader = OrderedLoader

        return yaml.load(stream, OrderedLoader)

    def load(self, scenario):
        """
        Loads scenario data.

        :param scenario: a path to a ``.json``/``.yaml``/``.yml`` file,
            a file object, or the scenario text itself
        :return: data from the scenario
        :rtype: ``dict``
        """
        name = self.path or getattr(scenario, "name", "<string>")
        try:
            if self.path and os.path.splitext(self.path)[1] == ".json":
                data = self._parse_json(self.path,
                                        os.path.dirname(self.path))
            else:
                data = self._ordered_load(scenario, yaml.SafeLoader)
        except yaml.YAMLError as e:
            msg = "Error parsing scenario {0}: {1}".format(name, e)
            raise LoadScenarioError(msg)
        except (IOError, OSError) as e:
            raise LoadScenarioError(e)
        if not isinstance(data, dict):
            msg = "Scenario {0} must be a mapping, got {1}".format(
                name, type(data).__name__)
            raise LoadScenarioError(msg)
        return data
