"""
stridelab 配置管理
"""
import os
from dataclasses import dataclass, field
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = os.path.dirname(os.path.abspath(__file__))


def _env_bool(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


@dataclass
class Config:
    """全局配置"""
    # sweep 默认并行度（--jobs 缺省值）
    jobs: int = field(default_factory=lambda: int(os.getenv("STRIDELAB_JOBS", "1")))

    # h-range 验证窗口：h ∈ [h0, h0 + h_window]
    h_window: int = field(default_factory=lambda: int(os.getenv("STRIDELAB_H_WINDOW", "4")))

    # 参数族检查的 t 上界
    family_t_max: int = field(default_factory=lambda: int(os.getenv("STRIDELAB_FAMILY_T_MAX", "20")))

    # sweep 是否包含 a3 >= a2^2 的退化基
    include_degenerate: bool = field(default_factory=lambda: _env_bool("STRIDELAB_INCLUDE_DEGENERATE"))

    # 日志
    log_level: str = field(default_factory=lambda: os.getenv("STRIDELAB_LOG_LEVEL", "INFO").upper())
    debug: bool = field(default_factory=lambda: _env_bool("STRIDELAB_DEBUG"))

    def validate(self) -> list[str]:
        """验证配置，返回错误列表（空列表表示通过）"""
        errors = []
        if self.jobs < 1:
            errors.append(f"❌ STRIDELAB_JOBS 必须 >= 1 (当前 {self.jobs})")
        if self.h_window < 0:
            errors.append(f"❌ STRIDELAB_H_WINDOW 必须 >= 0 (当前 {self.h_window})")
        if self.family_t_max < 1:
            errors.append(f"❌ STRIDELAB_FAMILY_T_MAX 必须 >= 1 (当前 {self.family_t_max})")
        return errors

    @property
    def effective_log_level(self) -> str:
        return "DEBUG" if self.debug else self.log_level


# 全局单例
config = Config()
