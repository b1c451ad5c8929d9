import os

from dynaconf import Dynaconf
from loguru import logger

from design_engine.data_models.search_config_data import SearchConfigModel
from engine_utils.directory_info import DirectoryInfo
from service.service_data_models.logger_config_data import LoggerConfigData

# command line flag -> search config field
SEARCH_OVERRIDES = {
    "time_limit": "time_limit",
    "back_max": "back_max",
    "n_round": "n_round",
    "seed": "seed",
    "restarts": "restarts",
    "stall_limit": "stall_limit",
    "init": "init",
    "walk_length": "walk_length",
    "workers": "workers",
}


def load_configs(in_args):
    os.environ["ENV_FOR_DYNACONF"] = in_args.env
    config_path = DirectoryInfo.resolve(in_args.config)
    logger_data, search_data = {}, {}
    if os.path.isfile(config_path):
        logger.debug(f"Load config with env {in_args.env} from {config_path}")
        config = Dynaconf(
            settings_files=[config_path],
            environments=True,
            load_dotenv=True
        )
        logger_data = dict(config.get("logger", {}))
        search_data = dict(config.get("search", {}))
    else:
        logger.warning(f"Config file {config_path} not found, using built-in defaults")

    for flag, key in SEARCH_OVERRIDES.items():
        value = getattr(in_args, flag, None)
        if value is not None:
            search_data[key] = value
    if getattr(in_args, "trace", None):
        search_data["record_steps"] = True
    if getattr(in_args, "log_level", None):
        logger_data["log_level"] = in_args.log_level

    out_logger_config = LoggerConfigData.model_validate({k.lower(): v for k, v in logger_data.items()})
    out_search_config = SearchConfigModel.model_validate({k.lower(): v for k, v in search_data.items()})
    return out_logger_config, out_search_config
