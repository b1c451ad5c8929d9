from typing import Optional

from pydantic import BaseModel, Field


class LoggerConfigData(BaseModel):
    log_level: str = Field(default="INFO")
    log_file: Optional[str] = Field(default=None)
