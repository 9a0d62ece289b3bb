/** Errors surfaced by the core pipeline, preserving its exit codes. */

export class GraphcapError extends Error {
  readonly exitCode: number;
  readonly errorType: string;

  constructor(message: string, exitCode: number, errorType: string) {
    super(message);
    this.name = new.target.name;
    this.exitCode = exitCode;
    this.errorType = errorType;
  }
}

/** Bad user-supplied data; core exit code 2. */
export class InputError extends GraphcapError {}

/** Invalid configuration value; core exit code 3. */
export class ConfigError extends GraphcapError {}

/** Internal invariant violation in the core; exit code 4. */
export class InternalError extends GraphcapError {}

export function errorFromExit(
  exitCode: number,
  errorType: string,
  message: string,
): GraphcapError {
  if (exitCode === 2) return new InputError(message, exitCode, errorType);
  if (exitCode === 3) return new ConfigError(message, exitCode, errorType);
  return new InternalError(message, exitCode, errorType);
}
