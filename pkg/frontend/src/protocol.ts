/** Wire types for the proof engine's JSON protocol, plus the browser transport. */

export const PROTOCOL_VERSION = 1;

export type RequestKind =
  | "parse_statement"
  | "apply_edit"
  | "check_proof"
  | "check_line"
  | "load_document"
  | "save_document"
  | "export_latex"
  | "import_document";

export interface ProtocolRequest {
  protocol: typeof PROTOCOL_VERSION;
  revision: number;
  kind: RequestKind;
  payload: Record<string, unknown>;
}

export interface ErrorPayload {
  code: string;
  message: string;
  position?: number;
}

export interface ProtocolResponse {
  protocol: number;
  revision: number;
  status: "ok" | "error";
  // payload shape depends on the request kind; see the store's accessors
  payload: any;
}

export interface Transport {
  send(request: ProtocolRequest): Promise<ProtocolResponse>;
}

/** POSTs each request to the local bridge (python -m aris.webbridge). */
export class HttpTransport implements Transport {
  constructor(private readonly url: string = "/api") {}

  async send(request: ProtocolRequest): Promise<ProtocolResponse> {
    const response = await fetch(this.url, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok) {
      throw new Error(`bridge returned HTTP ${response.status}`);
    }
    return (await response.json()) as ProtocolResponse;
  }
}
