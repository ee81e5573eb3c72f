# -*- coding: utf-8 -*-

"""
File formats: JSON codecs for reports, fragments and convolution elements,
YAML defaults and suite definitions, YAML report output.
"""

from .json_codec import (dump_json, element_from_json, element_to_json, load_element, load_fragment,
                         read_json, round_floats, save_element, save_fragment, write_json)
from .yaml_writer import save_report_to_yaml
